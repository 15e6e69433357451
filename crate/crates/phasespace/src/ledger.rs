use std::collections::BTreeMap;

use e1m1_core::Real;

/// Global phase stored as labelled contributions.
///
/// Interferometer phases are small differences between large, nearly equal
/// branch phases. Keeping every contribution under its origin label lets the
/// difference be formed label by label before anything is summed.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PhaseLedger<T> {
    terms: BTreeMap<String, T>,
}

impl<T: Real> PhaseLedger<T> {
    pub fn new() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn single(label: impl Into<String>, value: T) -> Self {
        let mut l = Self::new();
        l.add(label, value);
        l
    }

    pub fn add(&mut self, label: impl Into<String>, value: T) {
        if value == T::zero() {
            return;
        }
        let slot = self.terms.entry(label.into()).or_insert_with(T::zero);
        *slot += value;
    }

    pub fn merge(&mut self, other: &Self) {
        for (k, &v) in &other.terms {
            *self.terms.entry(k.clone()).or_insert_with(T::zero) += v;
        }
    }

    pub fn negated(&self) -> Self {
        Self { terms: self.terms.iter().map(|(k, &v)| (k.clone(), -v)).collect() }
    }

    pub fn get(&self, label: &str) -> T {
        self.terms.get(label).copied().unwrap_or_else(T::zero)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.terms.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, T)> {
        self.terms.iter().map(|(k, &v)| (k.as_str(), v))
    }

    /// Compensated sum of all contributions.
    pub fn total(&self) -> T {
        let mut sum = T::zero();
        let mut carry = T::zero();
        for &v in self.terms.values() {
            let t = sum + v;
            if sum.abs() >= v.abs() {
                carry += (sum - t) + v;
            } else {
                carry += (v - t) + sum;
            }
            sum = t;
        }
        sum + carry
    }

    /// Prefixes every label, used to keep contributions of different
    /// segments apart when they are later composed.
    pub fn relabelled(&self, prefix: &str) -> Self {
        Self { terms: self.terms.iter().map(|(k, &v)| (format!("{prefix}{k}"), v)).collect() }
    }
}
