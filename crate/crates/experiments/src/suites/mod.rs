pub mod bilinear;
pub mod gevrey;
pub mod kernel;
pub mod picard;
pub mod toolkit;

pub use bilinear::run_bilinear_suite;
pub use gevrey::{run_decay_experiment, run_gevrey_tracking, tracked_run};
pub use kernel::run_kernel_suite;
pub use picard::run_picard_contraction;
pub use toolkit::run_toolkit_suite;
