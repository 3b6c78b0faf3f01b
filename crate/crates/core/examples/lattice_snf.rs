//! Smith normal form and coset labels for the root lattice inside the
//! weight lattice.

use alcove::lattice::{smith_normal_form, CosetLabeler, IntMatrix};

fn main() {
    for (name, rows) in [
        ("A2", vec![vec![2, -1], vec![-1, 2]]),
        ("B2", vec![vec![2, -2], vec![-1, 2]]),
        ("A3", vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]),
    ] {
        let cartan = IntMatrix::from_rows(&rows);
        let snf = smith_normal_form(&cartan);
        let cosets = CosetLabeler::new(&cartan.transpose());
        let label = cosets.label(&vec![1; rows.len()]);
        println!("{name}: det={} diagonal={:?} index={} label(rho)={label:?}", cartan.det(), snf.diagonal, cosets.index());
    }
}
