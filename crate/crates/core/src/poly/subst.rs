use std::collections::HashMap;

use num_bigint::BigInt;

use super::{Polynomial, VarSpace};
use crate::error::{Error, Result};

/// A ring homomorphism from one variable space into polynomials over a
/// target space.
///
/// Variables without an image are carried over by name when the target has a
/// variable of the same name, unless the substitution is strict. Negative
/// powers may only be applied to unit monomials.
#[derive(Clone, Debug)]
pub struct Substitution {
    target: VarSpace,
    images: HashMap<String, Polynomial>,
    strict: bool,
}

impl Substitution {
    pub fn new(target: &VarSpace) -> Substitution {
        Substitution {
            target: target.clone(),
            images: HashMap::new(),
            strict: false,
        }
    }

    /// Fail on any source variable without an explicit image.
    pub fn strict(mut self, strict: bool) -> Substitution {
        self.strict = strict;
        self
    }

    pub fn map(mut self, var: &str, image: Polynomial) -> Result<Substitution> {
        if *image.space() != self.target {
            return Err(Error::SpaceMismatch(
                image.space().names().join(","),
                self.target.names().join(","),
            ));
        }
        self.images.insert(var.to_owned(), image);
        Ok(self)
    }

    pub fn map_const(self, var: &str, c: impl Into<BigInt>) -> Substitution {
        let image = Polynomial::constant(&self.target, c);
        self.map(var, image).expect("constant lives in the target space")
    }

    /// Maps `var` to the monomial `prod name^exp` of the target space.
    pub fn map_monomial(self, var: &str, factors: &[(&str, i32)]) -> Result<Substitution> {
        let mut e = vec![0; self.target.len()];
        for &(name, k) in factors {
            let i = self
                .target
                .index(name)
                .ok_or_else(|| Error::Substitution(format!("target has no variable {name}")))?;
            e[i] += k;
        }
        let image = Polynomial::monomial(&self.target, e, 1);
        self.map(var, image)
    }

    pub fn target(&self) -> &VarSpace {
        &self.target
    }
}

impl Polynomial {
    pub fn substitute(&self, subst: &Substitution) -> Result<Polynomial> {
        let target = &subst.target;
        let mut images = Vec::with_capacity(self.space.len());
        for name in self.space.names() {
            let image = match subst.images.get(name) {
                Some(p) => p.clone(),
                None if !subst.strict && target.index(name).is_some() => Polynomial::var(target, name)?,
                None => {
                    return Err(Error::Substitution(format!("variable {name} is unmapped")));
                }
            };
            images.push(image);
        }
        let inverses: Vec<Option<Polynomial>> = images.iter().map(|p| p.unit_inverse()).collect();
        let mut powers: HashMap<(usize, i32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if let std::collections::hash_map::Entry::Vacant(slot) = powers.entry((i, e)) {
                    let base = if e > 0 {
                        images[i].clone()
                    } else {
                        inverses[i].clone().ok_or_else(|| {
                            Error::Substitution(format!(
                                "negative power of {} needs a unit monomial image, got {}",
                                self.space.names()[i],
                                images[i]
                            ))
                        })?
                    };
                    slot.insert(base.pow(e.unsigned_abs()));
                }
                term = &term * &powers[&(i, e)];
                if term.is_zero() {
                    break;
                }
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }
}
