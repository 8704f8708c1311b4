//! Exact algorithms for turning graphs into uniform cluster graphs, that is,
//! disjoint unions of equal-sized cliques, under six modification regimes:
//! vertex deletion, edge deletion, edge addition, edge editing, and exclusive
//! or inclusive vertex splitting.
//!
//! The crate ships, per variant, a kernelization with a proven vertex bound,
//! fixed-parameter solvers where known (vertex deletion, edge deletion), a
//! dense-graph reduction to d-way cut for edge deletion, and brute-force
//! oracles that serve as ground truth for the test suites. File formats, a
//! planted-instance generator and witness replay live alongside.

pub mod edge_kernels;
pub mod gen;
pub mod graph;
pub mod instance;
pub mod io;
pub mod kernel;
pub mod matching;
pub mod oracle;
pub mod split_kernels;
pub mod uced_branch;
pub mod uced_dense;
pub mod ucvd_kernel;
pub mod ucvd_solver;

pub use graph::{EdgeSet, Graph, VertexSet};
pub use instance::{apply_witness, Instance, SplitStep, Variant, Witness};
pub use kernel::{KernelOutcome, KernelResult};

/// Dispatches to the kernelization matching the variant.
pub fn kernelize(g: &Graph, k: usize, variant: Variant) -> KernelOutcome {
    match variant {
        Variant::Ucvd => ucvd_kernel::kernelize_ucvd(g, k),
        Variant::Uced => edge_kernels::kernelize_uced(g, k),
        Variant::Ucea => edge_kernels::kernelize_ucea(g, k),
        Variant::Ucee => edge_kernels::kernelize_ucee(g, k),
        Variant::Ucevs => split_kernels::kernelize_ucevs(g, k),
        Variant::Ucivs => split_kernels::kernelize_ucivs(g, k),
    }
}

/// Vertex bound guaranteed for reduced instances of each variant, as a
/// function of the input parameter.
pub fn kernel_size_bound(variant: Variant, k: usize) -> usize {
    match variant {
        Variant::Ucvd => ucvd_kernel::ucvd_size_bound(k),
        Variant::Uced => 6 * k,
        Variant::Ucea => 5 * k,
        Variant::Ucee => (45 * k * k + 12 * k).saturating_sub(1),
        Variant::Ucevs | Variant::Ucivs => 4 * k,
    }
}
