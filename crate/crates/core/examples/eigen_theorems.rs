//! Numerical checks of the variational characterizations of eigenvalues on
//! a random symmetric matrix.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use specgraph::linalg::{random_orthonormal, random_symmetric};
use specgraph::spectra::{check_courant_fischer, check_interlacing, check_rayleigh_ritz, eigh, SymMatrix};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = SymMatrix::new(random_symmetric(8, &mut rng)).unwrap();
    let eig = eigh(&a).unwrap();
    println!("eigenvalues {:.4}", eig.values.transpose());
    println!("reconstruction error {:.2e}", (eig.reconstruct() - a.matrix()).amax());

    let rr = check_rayleigh_ritz(&a, 200, 1).unwrap();
    println!("Rayleigh–Ritz: worst violation {:.2e}", rr.max_violation);

    let r = random_orthonormal(8, 3, &mut rng);
    let il = check_interlacing(&a, &r).unwrap();
    println!("interlacing holds: {} (compressed spectrum {:?})", il.holds, il.mu);

    for k in 1..=8 {
        let cf = check_courant_fischer(&a, k, 50, 2).unwrap();
        println!("Courant–Fischer k={k}: optimal error {:.1e}, sampled violation {:.1e}", cf.optimal_error, cf.sampled_violation);
    }
}
