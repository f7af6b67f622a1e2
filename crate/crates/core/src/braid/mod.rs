//! Braid words, Garside normal form and constructive conjugating words.

mod construct;
mod garside;
mod word;

pub use construct::{ascending_run, half_twist, pair_transport, shift_check, swap_word};
pub use garside::{normal_form, words_equal, NormalForm, PermBraid};
pub use word::BraidWord;
