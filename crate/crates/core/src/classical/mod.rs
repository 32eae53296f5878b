//! Classical realizations: free Lie, tensor and symmetric algebras.

mod derivation;
mod lie;
mod oracle;
mod traces;
mod words;

pub use derivation::{extend_words, format_value, normalize, parse_value, ClassicalDerivation, Operad};
pub use lie::{
    commutator, expand_lyndon_sum, is_lie_element, is_lyndon, lie_normal_form, lyndon_basis, lyndon_coordinates,
    lyndon_expansion, lyndon_words, parse_lie, standard_factorization, witt_dimension, Bracket, LyndonMonomial,
    WordSum,
};
pub use oracle::{
    eval_tree, transport, transport_derivation, transport_trace_ass, transport_trace_com, transport_trace_lie,
};
pub use traces::{
    abelianize, act_ass, act_com, act_lie, bimodule_normal_form, classical_cocycle_defect, classical_div,
    com_divergence, double_divergence, double_divergence_raw, satoh_trace, tilde_delta, tilde_delta_trace,
    BimoduleClass, ClassicalTrace,
};
pub use words::{all_words, letter_char, letter_index, monomials, words_with_content, BimoduleWord, CyclicWord, Word, ALPHABET, SLOT};
