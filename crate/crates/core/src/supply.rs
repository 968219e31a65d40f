//! Fresh identifier generation.

use std::collections::HashSet;

/// Hands out identifiers of the form `<prefix><counter>`, never repeating one
/// and never returning a name from its avoid set.
#[derive(Clone, Debug)]
pub struct NameSupply {
    prefix: String,
    counter: u64,
    avoid: HashSet<String>,
}

impl Default for NameSupply {
    fn default() -> Self {
        Self::new()
    }
}

impl NameSupply {
    /// A supply drawing `n0`, `n1`, ...
    pub fn new() -> Self {
        Self::with_prefix("n")
    }

    pub fn with_prefix(prefix: &str) -> Self {
        NameSupply {
            prefix: prefix.to_owned(),
            counter: 0,
            avoid: HashSet::new(),
        }
    }

    /// Never hand out any of `names`. Used to keep generated names disjoint
    /// from identifiers already present in the input.
    pub fn avoiding<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.avoid.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn reserve(&mut self, name: &str) {
        self.avoid.insert(name.to_owned());
    }

    pub fn counter(&self) -> u64 {
        self.counter
    }

    pub fn fresh(&mut self) -> String {
        loop {
            let name = format!("{}{}", self.prefix, self.counter);
            self.counter += 1;
            if !self.avoid.contains(&name) {
                return name;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_distinct_and_skip_avoided() {
        let mut s = NameSupply::new().avoiding(["n1"]);
        assert_eq!(s.fresh(), "n0");
        assert_eq!(s.fresh(), "n2");
        assert_eq!(s.fresh(), "n3");
    }
}
