//! Positive unital linear maps: construction, unitality, bound transport,
//! and the Choi inverse inequality.
//!
//! Run with: cargo run --example positive_maps

use opineq::linalg::{loewner_leq, Matrix, SpdMatrix, SpectralBounds, TolerancePolicy};
use opineq::posmaps::PositiveUnitalMap;
use opineq::sampling::{sample_orthogonal, sample_spd};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> opineq::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let tol = TolerancePolicy::default();

    // Build one map of each shape. Every constructor rejects inputs that
    // would break positivity or unitality (e.g. a non-isometric T).
    let q = sample_orthogonal(2, &mut rng);
    let maps: Vec<PositiveUnitalMap> = vec![
        PositiveUnitalMap::identity(2)?,
        PositiveUnitalMap::normalized_trace(2)?,
        PositiveUnitalMap::isometry_congruence(q.clone())?,
        PositiveUnitalMap::block_average(2, 2)?,
        PositiveUnitalMap::convex_combination(vec![
            (0.3, PositiveUnitalMap::identity(2)?),
            (0.7, PositiveUnitalMap::isometry_congruence(q)?),
        ])?,
    ];

    for map in &maps {
        println!(
            "{map}: {}x{} -> {}x{}, unital = {}",
            map.input_dim(),
            map.input_dim(),
            map.output_dim(),
            map.output_dim(),
            map.verify_unital()
        );
    }

    // A non-isometry is rejected up front, not at apply time.
    let skew = Matrix::from_rows(&[vec![1.0, 0.0], vec![1.0, 1.0]])?;
    match PositiveUnitalMap::isometry_congruence(skew) {
        Err(err) => println!("rejected T = [[1,0],[1,1]]: {err}"),
        Ok(_) => unreachable!("a shear is not an isometry"),
    }

    // Positive unital maps transport spectral bounds: m <= A <= M forces
    // m <= Phi(A) <= M.
    let bounds = SpectralBounds::new(1.0, 4.0)?;
    let a = sample_spd(4, &bounds, &mut rng);
    let avg = PositiveUnitalMap::block_average(2, 2)?;
    let image = SpdMatrix::new(avg.apply(a.sym())?)?;
    println!(
        "A spectrum [{:.4}, {:.4}] -> Phi(A) spectrum [{:.4}, {:.4}] (bounds [1, 4])",
        a.lambda_min(),
        a.lambda_max(),
        image.lambda_min(),
        image.lambda_max()
    );

    // Choi's inequality: Phi(A)^-1 <= Phi(A^-1).
    let lhs = image.inverse()?;
    let rhs = SpdMatrix::new(avg.apply(a.inverse()?.sym())?)?;
    let order = loewner_leq(lhs.sym(), rhs.sym(), &tol)?;
    println!(
        "Phi(A)^-1 <= Phi(A^-1): holds = {}, gap = {:.6}",
        order.holds, order.gap
    );

    // The normalized trace is the fully averaging map: it sends every
    // matrix to a 1x1 multiple of the identity, so Choi's inequality
    // becomes the scalar AM-HM inequality on the spectrum.
    let tr = PositiveUnitalMap::normalized_trace(4)?;
    let mean = tr.apply(a.sym())?.get(0, 0);
    let mean_of_inverses = tr.apply(a.inverse()?.sym())?.get(0, 0);
    println!(
        "normalized trace: 1/avg(lambda) = {:.6} <= avg(1/lambda) = {:.6}",
        1.0 / mean,
        mean_of_inverses
    );

    Ok(())
}
