//! Spectral decomposition and functional calculus on one matrix.
//!
//! Run with: cargo run --example functional_calculus

use opineq::linalg::{eigh, loewner_leq, SpdMatrix, SymMatrix, TolerancePolicy};

fn print_rows(label: &str, rows: &[Vec<f64>]) {
    println!("{label}:");
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>10.6}")).collect();
        println!("  [{}]", cells.join(", "));
    }
}

fn main() -> opineq::Result<()> {
    let a = SpdMatrix::from_rows(&[
        vec![4.0, 1.0, 0.5],
        vec![1.0, 3.0, -0.2],
        vec![0.5, -0.2, 2.0],
    ])?;
    print_rows("A", &a.to_rows());

    // The decomposition is computed once and cached on the value.
    let eig = a.eig();
    println!("eigenvalues (descending): {:?}", eig.lambda());
    println!(
        "reconstruction residual  ||Q L Q' - A||_F = {:.3e}",
        eig.reconstruct().sub(a.sym()).frobenius_norm()
    );
    println!(
        "orthogonality residual   ||Q'Q - I||_F   = {:.3e}",
        eig.orthogonality_residual()
    );

    // f(A) = Q f(L) Q': entries stay in the original basis, so applying
    // the identity function returns A itself, not a reordered copy.
    let same = a.apply_function(|x| x)?;
    println!(
        "identity function residual = {:.3e}",
        same.sub(a.sym()).frobenius_norm()
    );

    let root = a.sqrt()?;
    print_rows("A^(1/2)", &root.to_rows());
    println!(
        "||A^(1/2) A^(1/2) - A||_F = {:.3e}",
        root.as_matrix()
            .matmul(root.as_matrix())
            .sub(a.as_matrix())
            .frobenius_norm()
    );

    let inv = a.inverse()?;
    println!(
        "||A A^-1 - I||_F = {:.3e}",
        a.as_matrix()
            .matmul(inv.as_matrix())
            .sub(&opineq::linalg::Matrix::identity(a.n()))
            .frobenius_norm()
    );

    // Non-integer powers compose: A^0.3 A^0.7 = A for commuting factors.
    let p3 = a.power(0.3)?;
    let p7 = a.power(0.7)?;
    println!(
        "||A^0.3 A^0.7 - A||_F = {:.3e}",
        p3.as_matrix()
            .matmul(p7.as_matrix())
            .sub(a.as_matrix())
            .frobenius_norm()
    );

    // Loewner order: A <= A + E for any positive semidefinite E, with the
    // gap reported as lambda_min of the difference.
    let bump = SymMatrix::diag(&[0.5, 0.1, 0.2])?;
    let bigger = SpdMatrix::new(a.sym().add(&bump))?;
    let tol = TolerancePolicy::default();
    let order = loewner_leq(a.sym(), bigger.sym(), &tol)?;
    println!(
        "A <= A + diag(0.5, 0.1, 0.2): holds = {}, gap = {:.6}",
        order.holds, order.gap
    );

    // eigh works on indefinite symmetric input too.
    let indefinite = SymMatrix::from_rows(&[vec![0.0, 2.0], vec![2.0, 0.0]])?;
    let e = eigh(&indefinite)?;
    println!("eigenvalues of [[0,2],[2,0]]: {:?}", e.lambda());

    Ok(())
}
