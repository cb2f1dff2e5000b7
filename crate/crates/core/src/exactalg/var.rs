//! Interned variable symbols.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

/// A variable symbol such as `y3`, `lambda` or `x_111`.
///
/// Variables are interned in a process-wide, append-only registry; two
/// variables with the same name are the same `Var`. The derived ordering is
/// registration order and is only used for internal storage. Anything that is
/// printed is ordered with [`Var::canonical_cmp`], which depends on names
/// alone, so output does not depend on registration order.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

#[derive(Default)]
struct Registry {
    names: Vec<Arc<str>>,
    ids: HashMap<Arc<str>, u32>,
}

fn registry() -> &'static RwLock<Registry> {
    static REGISTRY: OnceLock<RwLock<Registry>> = OnceLock::new();
    REGISTRY.get_or_init(|| RwLock::new(Registry::default()))
}

impl Var {
    /// Interns `name` and returns its symbol.
    pub fn new(name: &str) -> Var {
        if let Some(&id) = registry().read().expect("registry lock").ids.get(name) {
            return Var(id);
        }
        let mut reg = registry().write().expect("registry lock");
        if let Some(&id) = reg.ids.get(name) {
            return Var(id);
        }
        let id = reg.names.len() as u32;
        let key: Arc<str> = Arc::from(name);
        reg.names.push(key.clone());
        reg.ids.insert(key, id);
        Var(id)
    }

    /// The symbol's name.
    pub fn name(&self) -> Arc<str> {
        registry().read().expect("registry lock").names[self.0 as usize].clone()
    }

    /// Name-based total order: alphabetic runs compare lexically, digit runs
    /// numerically, so `y2 < y10`.
    pub fn canonical_cmp(&self, other: &Var) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        natural_cmp(&self.name(), &other.name())
    }
}

/// Natural string order used for canonical output.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut i, mut j) = (0, 0);
    let (ab, bb) = (a.as_bytes(), b.as_bytes());
    while i < ab.len() && j < bb.len() {
        if ab[i].is_ascii_digit() && bb[j].is_ascii_digit() {
            let si = i;
            while i < ab.len() && ab[i].is_ascii_digit() {
                i += 1;
            }
            let sj = j;
            while j < bb.len() && bb[j].is_ascii_digit() {
                j += 1;
            }
            let da = a[si..i].trim_start_matches('0');
            let db = b[sj..j].trim_start_matches('0');
            let ord = da.len().cmp(&db.len()).then_with(|| da.cmp(db));
            if ord != Ordering::Equal {
                return ord;
            }
        } else {
            let ord = ab[i].cmp(&bb[j]);
            if ord != Ordering::Equal {
                return ord;
            }
            i += 1;
            j += 1;
        }
    }
    (ab.len() - i).cmp(&(bb.len() - j)).then_with(|| a.cmp(b))
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Interns a list of names.
pub fn vars(names: &[&str]) -> Vec<Var> {
    names.iter().map(|n| Var::new(n)).collect()
}
