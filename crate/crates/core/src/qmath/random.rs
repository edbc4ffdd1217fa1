use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{StateVector, C64};

/// Seedable generator used everywhere randomness is needed.
pub type QRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> QRng {
    QRng::seed_from_u64(seed)
}

/// Independent stream `stream` of the generator seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> QRng {
    let mut rng = QRng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Haar-uniform pure qubit: a normalized complex Gaussian 2-vector.
pub fn random_pure_qubit<R: Rng + ?Sized>(rng: &mut R) -> StateVector {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let amps = vec![C64::new(v[0], v[1]), C64::new(v[2], v[3])];
        if let Ok(s) = StateVector::normalized(amps) {
            return s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_seed_is_deterministic() {
        let a = random_pure_qubit(&mut seeded_rng(7));
        let b = random_pure_qubit(&mut seeded_rng(7));
        assert_eq!(a, b);
    }

    #[test]
    fn streams_differ() {
        let a = random_pure_qubit(&mut stream_rng(7, 0));
        let b = random_pure_qubit(&mut stream_rng(7, 1));
        assert_ne!(a, b);
    }

    #[test]
    fn samples_are_normalized_and_isotropic() {
        let mut rng = seeded_rng(2024);
        let n = 100_000;
        let mut mean = [0.0f64; 3];
        for _ in 0..n {
            let psi = random_pure_qubit(&mut rng);
            let norm: f64 = psi.amplitudes().iter().map(|a| a.norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-12);
            let s = psi.projector().bloch().unwrap();
            for (m, c) in mean.iter_mut().zip(s.components()) {
                *m += c / n as f64;
            }
        }
        // Each component has variance 1/3; 0.02 is ~11 standard errors.
        assert!(mean.iter().all(|m| m.abs() < 0.02), "{mean:?}");
    }
}
