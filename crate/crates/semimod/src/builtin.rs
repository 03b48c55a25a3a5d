//! The builtin instance catalog.
//!
//! Names understood by [`builtin_instance`]:
//!
//! - `B` -- the Boolean semiring `{0,1}` with `1+1=1`
//! - `B31` -- Golan's three-element semiring `B(3,1)`
//! - `Z2` -- the two-element field viewed as a semiring
//! - `Zero` -- the trivial semimodule (naturals scalars)
//! - `C(k,n)` -- the cyclic monoid with index `k` and period `n`
//!   (`C(0,n)` is `Z_n`, `C(1,1)` is the Boolean monoid)
//! - `M2(S)` -- the 2x2 matrix semiring over a catalog semiring `S`
//! - `A(+)B` -- the direct sum of two catalog entries, read as naturals-mode
//!   monoids (semiring names contribute their additive monoid)
//!
//! Note on `B(3,1)`: the example table that circulates for it
//! (`1+2=1, 2+2=0`) admits no associative completion once the quotient by
//! `{0,2}` is required to be the two-element group, so the catalog carries
//! the tables from Golan's `B(n,i)` construction: `1+1=2`, `1+2=1`,
//! `2+2=2`, and `2*2=2`. The corpus runner reports this discrepancy
//! explicitly rather than hiding it.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{AlgebraError, Result};
use crate::semimodule::{FiniteSemimodule, ScalarDomain};
use crate::semiring::{validate_semiring, FiniteSemiring};
use crate::table::{Action, BinOp};
use crate::Elem;

/// A catalog entry: either a semiring or a semimodule.
#[derive(Clone, Debug)]
pub enum BuiltinInstance {
    Semiring(Arc<FiniteSemiring>),
    Semimodule(Arc<FiniteSemimodule>),
}

/// Resolves a catalog name. Every returned instance passes its validator.
pub fn builtin_instance(name: &str) -> Result<BuiltinInstance> {
    let name = name.trim();
    if let Some((left, right)) = split_sum(name) {
        let l = builtin_module(left)?;
        let r = builtin_module(right)?;
        return Ok(BuiltinInstance::Semimodule(direct_sum_module(&l, &r)));
    }
    match name {
        "B" => Ok(BuiltinInstance::Semiring(boolean_semiring())),
        "B31" => Ok(BuiltinInstance::Semiring(b31_semiring())),
        "Z2" => Ok(BuiltinInstance::Semiring(z2_semiring())),
        "Zero" => Ok(BuiltinInstance::Semimodule(zero_module())),
        _ => {
            if let Some(rest) = name.strip_prefix("M2(").and_then(|r| r.strip_suffix(')')) {
                let inner = builtin_semiring(rest)?;
                return Ok(BuiltinInstance::Semiring(matrix2_semiring(&inner)));
            }
            if let Some((k, n)) = parse_cyclic(name) {
                return Ok(BuiltinInstance::Semimodule(cyclic_monoid(k, n)?));
            }
            Err(AlgebraError::UnknownName(String::from(name)))
        }
    }
}

/// Resolves a catalog name to a semiring, rejecting semimodule names.
pub fn builtin_semiring(name: &str) -> Result<Arc<FiniteSemiring>> {
    match builtin_instance(name)? {
        BuiltinInstance::Semiring(s) => Ok(s),
        BuiltinInstance::Semimodule(_) => Err(AlgebraError::UnknownName(format!(
            "{name} is not a semiring"
        ))),
    }
}

/// Resolves a catalog name to a naturals-mode semimodule; semiring names
/// contribute their additive monoid.
pub fn builtin_module(name: &str) -> Result<Arc<FiniteSemimodule>> {
    match builtin_instance(name)? {
        BuiltinInstance::Semimodule(m) => Ok(m),
        BuiltinInstance::Semiring(s) => Ok(additive_monoid(&s)),
    }
}

fn split_sum(name: &str) -> Option<(&str, &str)> {
    // Top-level "(+)" split, respecting parentheses in C(k,n) and M2(S).
    let bytes = name.as_bytes();
    let mut depth = 0usize;
    for i in 0..bytes.len() {
        match bytes[i] {
            b'(' if name[i..].starts_with("(+)") && depth == 0 => {
                return Some((&name[..i], &name[i + 3..]));
            }
            b'(' => depth += 1,
            b')' => depth = depth.saturating_sub(1),
            _ => {}
        }
    }
    None
}

fn parse_cyclic(name: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix("C(")?.strip_suffix(')')?;
    let (k, n) = rest.split_once(',')?;
    Some((k.trim().parse().ok()?, n.trim().parse().ok()?))
}

/// The Boolean semiring `{0,1}` with `1+1=1`.
pub fn boolean_semiring() -> Arc<FiniteSemiring> {
    validate_semiring("B", 2, alloc::vec![0, 1, 1, 1], alloc::vec![0, 0, 0, 1], 0, 1)
        .expect("Boolean semiring tables")
}

/// The two-element field `{0,1}` with `1+1=0`, as a semiring.
pub fn z2_semiring() -> Arc<FiniteSemiring> {
    validate_semiring("Z2", 2, alloc::vec![0, 1, 1, 0], alloc::vec![0, 0, 0, 1], 0, 1)
        .expect("Z2 semiring tables")
}

/// Golan's `B(3,1)`: carrier `{0,1,2}`, addition `1+1=2, 1+2=1, 2+2=2`,
/// multiplication with identity `1` and `2*2=2`.
pub fn b31_semiring() -> Arc<FiniteSemiring> {
    validate_semiring(
        "B31",
        3,
        alloc::vec![0, 1, 2, 1, 2, 1, 2, 1, 2],
        alloc::vec![0, 0, 0, 0, 1, 2, 0, 2, 2],
        0,
        1,
    )
    .expect("B(3,1) semiring tables")
}

/// The trivial semimodule over the naturals.
pub fn zero_module() -> Arc<FiniteSemimodule> {
    FiniteSemimodule::from_tables_unchecked(
        String::from("Zero"),
        ScalarDomain::Naturals,
        BinOp::from_fn(1, |_, _| 0),
        None,
    )
}

/// The cyclic monoid `C(k,n)` generated by one element with index `k` and
/// period `n`: carrier `{0, .., k+n-1}`, where sums at or above `k` wrap
/// into the cycle `[k, k+n)`. `C(0,n)` is the cyclic group `Z_n`.
pub fn cyclic_monoid(k: usize, n: usize) -> Result<Arc<FiniteSemimodule>> {
    if n == 0 {
        return Err(AlgebraError::structure("cyclic monoid period must be >= 1"));
    }
    let size = k + n;
    let add = BinOp::from_fn(size, |a, b| {
        let s = a + b;
        if s < size {
            s
        } else {
            k + (s - k) % n
        }
    });
    Ok(FiniteSemimodule::from_tables_unchecked(
        format!("C({k},{n})"),
        ScalarDomain::Naturals,
        add,
        None,
    ))
}

/// Forgets the multiplication: the additive monoid of `S` as a
/// naturals-mode semimodule.
pub fn additive_monoid(s: &Arc<FiniteSemiring>) -> Arc<FiniteSemimodule> {
    FiniteSemimodule::from_tables_unchecked(
        String::from(s.name()),
        ScalarDomain::Naturals,
        BinOp::from_fn(s.size(), |a, b| s.add(a, b)),
        None,
    )
}

/// `S` as a left module over itself, the scalar action being multiplication.
pub fn module_over_self(s: &Arc<FiniteSemiring>) -> Arc<FiniteSemimodule> {
    FiniteSemimodule::from_tables_unchecked(
        String::from(s.name()),
        ScalarDomain::Semiring(Arc::clone(s)),
        BinOp::from_fn(s.size(), |a, b| s.add(a, b)),
        Some(Action::from_fn(s.size(), s.size(), |a, b| s.mul(a, b))),
    )
}

/// The free module `S^rank` with componentwise structure. Elements are
/// base-`|S|` digit strings, most significant coordinate first.
pub fn free_module(s: &Arc<FiniteSemiring>, rank: u32) -> Arc<FiniteSemimodule> {
    let base = s.size();
    let size = base.pow(rank);
    let digits = |mut x: usize| -> Vec<Elem> {
        let mut out = alloc::vec![0; rank as usize];
        for d in (0..rank as usize).rev() {
            out[d] = x % base;
            x /= base;
        }
        out
    };
    let pack = |ds: &[Elem]| -> usize { ds.iter().fold(0, |acc, &d| acc * base + d) };
    let add = BinOp::from_fn(size, |a, b| {
        let (da, db) = (digits(a), digits(b));
        let sum: Vec<Elem> = da.iter().zip(&db).map(|(&x, &y)| s.add(x, y)).collect();
        pack(&sum)
    });
    let action = Action::from_fn(s.size(), size, |sc, m| {
        let dm = digits(m);
        let out: Vec<Elem> = dm.iter().map(|&x| s.mul(sc, x)).collect();
        pack(&out)
    });
    FiniteSemimodule::from_tables_unchecked(
        format!("{}^{rank}", s.name()),
        ScalarDomain::Semiring(Arc::clone(s)),
        add,
        Some(action),
    )
}

/// The 2x2 matrix semiring over `S`. Elements are packed row-major,
/// `[[a,b],[c,d]]` at index `((a*|S| + b)*|S| + c)*|S| + d`.
pub fn matrix2_semiring(s: &Arc<FiniteSemiring>) -> Arc<FiniteSemiring> {
    let base = s.size();
    let size = base.pow(4);
    let unpack = |mut x: usize| -> [Elem; 4] {
        let mut out = [0; 4];
        for d in (0..4).rev() {
            out[d] = x % base;
            x /= base;
        }
        out
    };
    let pack = |m: [Elem; 4]| -> usize { m.iter().fold(0, |acc, &d| acc * base + d) };
    let add: Vec<Elem> = (0..size)
        .flat_map(|x| {
            let mx = unpack(x);
            (0..size)
                .map(move |y| {
                    let my = unpack(y);
                    pack([
                        s.add(mx[0], my[0]),
                        s.add(mx[1], my[1]),
                        s.add(mx[2], my[2]),
                        s.add(mx[3], my[3]),
                    ])
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let mul: Vec<Elem> = (0..size)
        .flat_map(|x| {
            let [a1, b1, c1, d1] = unpack(x);
            (0..size)
                .map(move |y| {
                    let [a2, b2, c2, d2] = unpack(y);
                    pack([
                        s.add(s.mul(a1, a2), s.mul(b1, c2)),
                        s.add(s.mul(a1, b2), s.mul(b1, d2)),
                        s.add(s.mul(c1, a2), s.mul(d1, c2)),
                        s.add(s.mul(c1, b2), s.mul(d1, d2)),
                    ])
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let one = pack([s.one(), 0, 0, s.one()]);
    validate_semiring(&format!("M2({})", s.name()), size, add, mul, 0, one)
        .expect("matrix semiring tables")
}

/// Direct sum of two modules as a bare module; index of `(a, b)` is
/// `a * |B| + b`. The categorical wrapper with injections and projections
/// lives in [`crate::category::direct_sum`].
pub fn direct_sum_module(
    left: &Arc<FiniteSemimodule>,
    right: &Arc<FiniteSemimodule>,
) -> Arc<FiniteSemimodule> {
    assert!(
        left.same_scalars(right),
        "direct sum requires a shared scalar domain"
    );
    let (nl, nr) = (left.size(), right.size());
    let size = nl * nr;
    let add = BinOp::from_fn(size, |x, y| {
        let (xa, xb) = (x / nr, x % nr);
        let (ya, yb) = (y / nr, y % nr);
        left.add(xa, ya) * nr + right.add(xb, yb)
    });
    let action = left.scalars().semiring().map(|s| {
        Action::from_fn(s.size(), size, |sc, m| {
            let (a, b) = (m / nr, m % nr);
            left.act(sc, a) * nr + right.act(sc, b)
        })
    });
    FiniteSemimodule::from_tables_unchecked(
        format!("{}(+){}", left.name(), right.name()),
        left.scalars().clone(),
        add,
        action,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_names_resolve() {
        assert!(matches!(
            builtin_instance("B").unwrap(),
            BuiltinInstance::Semiring(_)
        ));
        assert!(matches!(
            builtin_instance("Zero").unwrap(),
            BuiltinInstance::Semimodule(_)
        ));
        assert!(builtin_instance("nope").is_err());
    }

    #[test]
    fn b31_matches_the_cyclic_monoid_additively() {
        let b31 = additive_monoid(&b31_semiring());
        let c12 = cyclic_monoid(1, 2).unwrap();
        assert_eq!(*b31, *c12);
    }

    #[test]
    fn b31_example_claims_hold_on_the_corrected_table() {
        let m = builtin_module("B31").unwrap();
        // {0,2} is closed and the quotient classes behave like Z2.
        assert_eq!(m.add(2, 2), 2);
        assert_eq!(m.add(1, 1), 2);
        assert_eq!(m.add(1, 2), 1);
        // x + x = 0 only for x = 0, so the only monoid map Z2 -> B31 is zero.
        assert!((1..3).all(|x| m.add(x, x) != 0));
    }

    #[test]
    fn cyclic_monoid_shapes() {
        let z2 = cyclic_monoid(0, 2).unwrap();
        assert_eq!(z2.add(1, 1), 0);
        let b = cyclic_monoid(1, 1).unwrap();
        assert_eq!(b.add(1, 1), 1);
        let c21 = cyclic_monoid(2, 1).unwrap();
        assert_eq!(c21.add(1, 1), 2);
        assert_eq!(c21.add(1, 2), 2);
    }

    #[test]
    fn sums_parse_and_build() {
        let m = builtin_module("Z2(+)C(1,1)").unwrap();
        assert_eq!(m.size(), 4);
        // (1,0) + (1,0) = (0,0); (0,1) + (0,1) = (0,1)
        assert_eq!(m.add(2, 2), 0);
        assert_eq!(m.add(1, 1), 1);
    }

    #[test]
    fn matrix_semiring_over_boolean() {
        let m2 = matrix2_semiring(&boolean_semiring());
        assert_eq!(m2.size(), 16);
        // [[1,0],[0,1]] * [[0,1],[1,0]] = [[0,1],[1,0]]
        let id = m2.one();
        let swap = 0b0110;
        assert_eq!(m2.mul(id, swap), swap);
        assert_eq!(m2.mul(swap, swap), id);
    }

    #[test]
    fn free_module_over_boolean() {
        let f = free_module(&boolean_semiring(), 2);
        assert_eq!(f.size(), 4);
        assert_eq!(f.add(0b10, 0b01), 0b11);
        assert_eq!(f.act(0, 0b11), 0);
        assert_eq!(f.act(1, 0b10), 0b10);
    }

    #[test]
    fn module_over_self_boolean() {
        let b = module_over_self(&boolean_semiring());
        assert_eq!(b.act(1, 1), 1);
        assert_eq!(b.act(1, 0), 0);
    }

    #[test]
    fn every_builtin_revalidates_from_its_own_tables() {
        use crate::semimodule::validate_semimodule;
        use crate::semiring::validate_semiring;
        for name in ["B", "B31", "Z2", "Zero", "C(1,2)", "C(3,1)", "Z2(+)B31", "M2(B)"] {
            match builtin_instance(name).unwrap() {
                BuiltinInstance::Semiring(s) => {
                    let again = validate_semiring(
                        s.name(),
                        s.size(),
                        s.add_flat().to_vec(),
                        s.mul_flat().to_vec(),
                        0,
                        s.one(),
                    )
                    .unwrap();
                    assert_eq!(*again, *s);
                }
                BuiltinInstance::Semimodule(m) => {
                    let again = validate_semimodule(
                        m.name(),
                        m.scalars().clone(),
                        m.size(),
                        m.add_flat().to_vec(),
                        0,
                        m.action_flat().map(|a| a.to_vec()),
                    )
                    .unwrap();
                    assert_eq!(*again, *m);
                }
            }
        }
    }
}
