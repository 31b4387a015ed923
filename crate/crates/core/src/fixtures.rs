//! Named fixtures used by the tests and the command line.

use crate::error::Result;
use crate::finset::SkelFinSet;
use crate::functor::{Filter, Representable};
use crate::lattice::{chain, m3, FiniteBooleanAlgebra, FiniteLattice};
use crate::poset::Poset;

/// The four-element Boolean algebra `0 < a, na < 1`.
pub fn b4() -> FiniteBooleanAlgebra {
    FiniteBooleanAlgebra::powerset_with_names(2, ["0", "a", "na", "1"].map(String::from).to_vec())
        .expect("B4 is Boolean")
}

/// The three-element chain `0 < m < 1`.
pub fn c3() -> FiniteLattice {
    chain(&["0", "m", "1"]).expect("C3 is a lattice")
}

/// The eight-element Boolean algebra on atoms `p, q, r`.
pub fn b8() -> FiniteBooleanAlgebra {
    FiniteBooleanAlgebra::powerset(&["p", "q", "r"]).expect("B8 is Boolean")
}

/// The diamond lattice.
pub fn diamond() -> FiniteLattice {
    m3().expect("M3 is a lattice")
}

/// The principal filter `↑g` of a poset, as a functor.
pub fn up(p: &Poset, g: usize) -> Filter<Poset> {
    let members = (0..p.len()).map(|x| p.leq(g, x)).collect();
    Filter::new(p.clone(), members).expect("flags match the poset")
}

/// `↑name`, looking the generator up by name.
pub fn up_named(p: &Poset, name: &str) -> Result<Filter<Poset>> {
    Ok(up(p, p.index_or_err(name)?))
}

/// `SkelFinSet(cap)(k, -)`.
pub fn finset_representable(cap: i64, k: usize) -> Result<Representable<SkelFinSet>> {
    Ok(Representable::new(SkelFinSet::new(cap)?, k))
}
