//! Benchmark workloads for the virial pipeline.

use bosegas_core::exact::rat;
use bosegas_core::{Backend, GasModel, Scalar, StructureFunction, VirialTable};

/// The reference two-parameter model used by every benchmark.
pub fn reference_model(order: usize) -> GasModel {
    GasModel::new(
        StructureFunction::MuThenQ {
            mu: rat(1, 4),
            q: rat(3, 2),
        },
        order,
    )
    .expect("order >= 2")
}

pub fn virial_table(order: usize, backend: Backend) -> VirialTable<Scalar> {
    reference_model(order)
        .virial_table(backend)
        .expect("rational parameters stay in the exact ring")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workload_runs() {
        let t = virial_table(4, Backend::Exact);
        assert_eq!(t.len(), 4);
        // phi(2) = (5/4)(5/2) - (1/4)(5/2)^2 = 25/16, V_2 = -phi(2)/2^(7/2)
        assert_eq!(t.get(2).unwrap().to_string(), "-25/256*sqrt(2)");
    }
}
