//! Open Toda chain: Lax matrix, Hamiltonians from the characteristic
//! polynomial, the Q-kernel and finite-difference application.

mod fd;
mod kernel;
mod lax;

pub use fd::{apply_hamiltonian_fd, Stencil};
pub use kernel::{q_kernel_symbolic, q_kernel_value, verify_intertwining, verify_kernel_decay, QKernelSymbol};
pub use lax::{char_poly_operator, lax_recursion, verify_hamiltonian_commutativity, CharPolyOperator, LaxEntry, LaxSymbol};

/// Largest rank accepted by the exact Toda checks by default.
pub const DEFAULT_MAX_RANK: usize = 4;
