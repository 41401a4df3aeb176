//! The threefold `X: y^n + z^n = f(x0, x1, x2)` in `P^4` and its hyperplane
//! sections `Y_s = X ∩ {x1 = s x0}`, for `f` a bi-pencil arrangement.
//!
//! Points of `P^4` are written in the order `(y : z : x0 : x1 : x2)`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::arrangement::{intersection_points, BiPencil};
use crate::gradedalg::Poly;
use crate::rational::{format_rational, normalize_projective, q, Q};

/// Variables of a finite fiber, living in the hyperplane `x1 = s x0`.
pub const FIBER_VARS: [&str; 4] = ["y", "z", "x0", "x2"];
/// Variables of the fiber at infinity, the hyperplane `x0 = 0`.
pub const INFINITY_VARS: [&str; 4] = ["y", "z", "x1", "x2"];
/// Variables of the total space.
pub const TOTAL_VARS: [&str; 5] = ["y", "z", "x0", "x1", "x2"];

/// A pencil parameter `s`, or the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum PencilParam {
    Finite(Q),
    Infinity,
}

impl fmt::Display for PencilParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PencilParam::Finite(s) => f.write_str(&format_rational(s)),
            PencilParam::Infinity => f.write_str("infinity"),
        }
    }
}

impl Serialize for PencilParam {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilFamily {
    pencil: BiPencil,
}

impl PencilFamily {
    pub fn new(pencil: BiPencil) -> Self {
        PencilFamily { pencil }
    }

    pub fn pencil(&self) -> &BiPencil {
        &self.pencil
    }

    pub fn n(&self) -> usize {
        self.pencil.n()
    }

    pub fn p(&self) -> usize {
        self.pencil.p()
    }

    pub fn q(&self) -> usize {
        self.pencil.q()
    }

    /// `h(s) = prod (1 - lambda_i s)`.
    pub fn h(&self, s: &Q) -> Q {
        self.pencil
            .lambdas()
            .iter()
            .map(|l| Q::one() - l * s)
            .product()
    }

    /// `f(x0, x1, x2)` as a polynomial in the total-space variables.
    pub fn arrangement_poly(&self) -> Poly {
        let x0 = Poly::var(&TOTAL_VARS, 2);
        let x1 = Poly::var(&TOTAL_VARS, 3);
        let x2 = Poly::var(&TOTAL_VARS, 4);
        let mut f = Poly::constant(&TOTAL_VARS, Q::one());
        for l in self.pencil.lambdas() {
            f = f.mul(&x0.sub(&x1.scale(l)));
        }
        for m in self.pencil.mus() {
            f = f.mul(&x0.sub(&x2.scale(m)));
        }
        f
    }

    /// `y^n + z^n - f(x0, x1, x2)`.
    pub fn total_space_poly(&self) -> Poly {
        let n = self.n() as u32;
        let y = Poly::var(&TOTAL_VARS, 0).pow(n);
        let z = Poly::var(&TOTAL_VARS, 1).pow(n);
        y.add(&z).sub(&self.arrangement_poly())
    }
}

/// `f_s = y^n + z^n - h(s) x0^p prod (x0 - mu_i x2)` over `y, z, x0, x2`, and
/// `f_inf = y^n + z^n - (-1)^n (prod lambda prod mu) x1^p x2^q` over `y, z, x1, x2`.
pub fn fiber_polynomial(fam: &PencilFamily, s: &PencilParam) -> Poly {
    let n = fam.n() as u32;
    match s {
        PencilParam::Finite(s) => {
            let v = &FIBER_VARS;
            let x0 = Poly::var(v, 2);
            let x2 = Poly::var(v, 3);
            let mut g = x0.pow(fam.p() as u32).scale(&fam.h(s));
            for m in fam.pencil.mus() {
                g = g.mul(&x0.sub(&x2.scale(m)));
            }
            Poly::var(v, 0).pow(n).add(&Poly::var(v, 1).pow(n)).sub(&g)
        }
        PencilParam::Infinity => {
            let v = &INFINITY_VARS;
            let sign = if n % 2 == 0 { q(1) } else { q(-1) };
            let c: Q = sign
                * fam
                    .pencil
                    .lambdas()
                    .iter()
                    .chain(fam.pencil.mus())
                    .product::<Q>();
            let mut e = vec![0; 4];
            e[2] = fam.p() as u32;
            e[3] = fam.q() as u32;
            Poly::var(v, 0)
                .pow(n)
                .add(&Poly::var(v, 1).pow(n))
                .sub(&Poly::monomial(v, e, c))
        }
    }
}

/// Parameters whose fiber is special: infinity and the roots `1/lambda_i` of `h`.
pub fn special_fibers(fam: &PencilFamily) -> Vec<PencilParam> {
    let mut out = vec![PencilParam::Infinity];
    let mut roots: Vec<Q> = fam
        .pencil
        .lambdas()
        .iter()
        .filter(|l| !l.is_zero())
        .map(|l| Q::one() / l)
        .collect();
    roots.sort();
    out.extend(roots.into_iter().map(PencilParam::Finite));
    out
}

/// Smallest nonnegative integer `s` with `h(s) != 0`; always 0 since `h(0) = 1`.
pub fn pick_generic_parameter(fam: &PencilFamily) -> Q {
    (0i64..)
        .map(q)
        .find(|s| !fam.h(s).is_zero())
        .expect("h has finitely many roots")
}

/// Which variety to describe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Locus {
    TotalSpace,
    Fiber(PencilParam),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SingularComponent {
    Point {
        coords: [Q; 5],
        tag: String,
    },
    /// The line through two points.
    Line {
        through: [[Q; 5]; 2],
        tag: String,
    },
}

impl Serialize for SingularComponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(tag = "kind", rename_all = "kebab-case")]
        enum View {
            Point {
                coords: Vec<String>,
                tag: String,
            },
            Line {
                through: Vec<Vec<String>>,
                tag: String,
            },
        }
        let pt = |c: &[Q; 5]| c.iter().map(format_rational).collect::<Vec<_>>();
        match self {
            SingularComponent::Point { coords, tag } => View::Point {
                coords: pt(coords),
                tag: tag.clone(),
            },
            SingularComponent::Line { through, tag } => View::Line {
                through: through.iter().map(pt).collect(),
                tag: tag.clone(),
            },
        }
        .serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularLocusReport {
    pub locus: String,
    pub polynomial: String,
    pub components: Vec<SingularComponent>,
    /// Every listed point (and every point of every listed line) kills all partials.
    pub verified: bool,
}

fn p4(c: [Q; 5]) -> [Q; 5] {
    let v = normalize_projective(&c).expect("nonzero point");
    [
        v[0].clone(),
        v[1].clone(),
        v[2].clone(),
        v[3].clone(),
        v[4].clone(),
    ]
}

/// The singular locus as described by the case analysis for this family.
///
/// * total space: `(0:0:P)` for every multiple point `P` of the arrangement,
///   of type `y^n + z^n - v^k - w^k` with `k` the multiplicity;
/// * finite fiber with `h(s) != 0`: the point `x0 = y = z = 0` when the
///   binary form has a multiple root there;
/// * finite fiber with `h(s) = 0`: the line `y = z = 0`;
/// * fiber at infinity: the two pencil centres (or the line `y = z = 0`
///   if the constant vanishes).
pub fn singular_locus(fam: &PencilFamily, which: &Locus) -> SingularLocusReport {
    let n = fam.n();
    let zero = Q::zero;
    let one = Q::one;
    let (label, poly, comps) = match which {
        Locus::TotalSpace => {
            let a = fam.pencil.arrangement();
            let comps = intersection_points(&a)
                .into_iter()
                .map(|fp| {
                    let [a0, a1, a2] = fp.point;
                    let k = fp.incident.len();
                    SingularComponent::Point {
                        coords: p4([zero(), zero(), a0, a1, a2]),
                        tag: format!("y^{n}+z^{n}-v^{k}-w^{k}"),
                    }
                })
                .collect();
            ("X".to_string(), fam.total_space_poly(), comps)
        }
        Locus::Fiber(PencilParam::Finite(s)) => {
            let poly = fiber_polynomial(fam, &PencilParam::Finite(s.clone()));
            let comps = if fam.h(s).is_zero() {
                vec![SingularComponent::Line {
                    through: [
                        p4([zero(), zero(), one(), s.clone(), zero()]),
                        p4([zero(), zero(), zero(), zero(), one()]),
                    ],
                    tag: format!("y^{n}+z^{n}"),
                }]
            } else {
                let k = fam.p() + fam.pencil.mus().iter().filter(|m| m.is_zero()).count();
                if k >= 2 {
                    vec![SingularComponent::Point {
                        coords: p4([zero(), zero(), zero(), zero(), one()]),
                        tag: format!("y^{n}+z^{n}-v^{k}"),
                    }]
                } else {
                    vec![]
                }
            };
            (format!("Y_{}", format_rational(s)), poly, comps)
        }
        Locus::Fiber(PencilParam::Infinity) => {
            let poly = fiber_polynomial(fam, &PencilParam::Infinity);
            let constant_vanishes = poly.terms().len() == 2;
            let comps = if constant_vanishes {
                vec![SingularComponent::Line {
                    through: [
                        p4([zero(), zero(), zero(), one(), zero()]),
                        p4([zero(), zero(), zero(), zero(), one()]),
                    ],
                    tag: format!("y^{n}+z^{n}"),
                }]
            } else {
                let mut v = Vec::new();
                if fam.p() >= 2 {
                    v.push(SingularComponent::Point {
                        coords: p4([zero(), zero(), zero(), zero(), one()]),
                        tag: format!("y^{n}+z^{n}-v^{}", fam.p()),
                    });
                }
                if fam.q() >= 2 {
                    v.push(SingularComponent::Point {
                        coords: p4([zero(), zero(), zero(), one(), zero()]),
                        tag: format!("y^{n}+z^{n}-v^{}", fam.q()),
                    });
                }
                v
            };
            ("Y_infinity".to_string(), poly, comps)
        }
    };
    let verified = comps
        .iter()
        .all(|c| component_is_singular(fam, which, &poly, c));
    SingularLocusReport {
        locus: label,
        polynomial: poly.to_string(),
        components: comps,
        verified,
    }
}

/// Restricts a point of `P^4` to the variables of the given locus.
fn local_coords(which: &Locus, c: &[Q; 5]) -> Option<Vec<Q>> {
    match which {
        Locus::TotalSpace => Some(c.to_vec()),
        Locus::Fiber(PencilParam::Finite(s)) => {
            // The point must lie on x1 = s x0.
            (c[3] == s * &c[2])
                .then(|| vec![c[0].clone(), c[1].clone(), c[2].clone(), c[4].clone()])
        }
        Locus::Fiber(PencilParam::Infinity) => c[2]
            .is_zero()
            .then(|| vec![c[0].clone(), c[1].clone(), c[3].clone(), c[4].clone()]),
    }
}

fn gradient_vanishes(poly: &Poly, at: &[Q]) -> bool {
    (0..poly.nvars()).all(|i| poly.derivative(i).eval(at).is_zero())
}

fn component_is_singular(
    fam: &PencilFamily,
    which: &Locus,
    poly: &Poly,
    c: &SingularComponent,
) -> bool {
    match c {
        SingularComponent::Point { coords, .. } => {
            local_coords(which, coords).is_some_and(|x| gradient_vanishes(poly, &x))
        }
        SingularComponent::Line {
            through: [a, b], ..
        } => {
            // Each partial restricted to the line has degree n - 1, so n points suffice.
            (0..=fam.n() as i64).all(|t| {
                let pt: [Q; 5] = std::array::from_fn(|i| &a[i] + q(t) * &b[i]);
                local_coords(which, &pt).is_some_and(|x| gradient_vanishes(poly, &x))
            })
        }
    }
}

/// The order-`n` symmetry scaling `y` and `z` by a primitive root of unity.
///
/// Acting on a monomial `y^a z^b x0^c x2^d` multiplies it by `eta^(a+b)`; the
/// phase is tracked as an exponent modulo `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonodromyAction {
    pub n: u32,
}

impl MonodromyAction {
    /// Phase picked up by the monomial after `times` applications.
    pub fn phase(&self, e: &[u32], times: u32) -> u32 {
        ((e[0] + e[1]) as u64 * times as u64 % self.n as u64) as u32
    }

    /// A polar form `h Omega / f^k` is invariant when `h * y z x0 x2` is,
    /// i.e. when `a + b + 2` is divisible by `n`.
    pub fn form_is_invariant(&self, e: &[u32]) -> bool {
        (e[0] + e[1] + 2) % self.n == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedalg::parse_poly;
    use crate::rational::q_frac;

    fn fam22() -> PencilFamily {
        PencilFamily::new(BiPencil::from_ints(&[1, -1], &[2, 3]).unwrap())
    }

    #[test]
    fn fiber_at_zero() {
        let f = fiber_polynomial(&fam22(), &PencilParam::Finite(q(0)));
        let expected = parse_poly("y^4+z^4-x0^2*(x0-2*x2)*(x0-3*x2)", &FIBER_VARS).unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn special_fiber_at_one() {
        let f = fiber_polynomial(&fam22(), &PencilParam::Finite(q(1)));
        assert_eq!(f, parse_poly("y^4+z^4", &FIBER_VARS).unwrap());
    }

    #[test]
    fn fiber_at_infinity() {
        // (-1)^4 * (1 * -1 * 2 * 3) = -6
        let f = fiber_polynomial(&fam22(), &PencilParam::Infinity);
        assert_eq!(
            f,
            parse_poly("y^4+z^4+6*x1^2*x2^2", &INFINITY_VARS).unwrap()
        );
    }

    #[test]
    fn fiber_is_hyperplane_section() {
        // f_s(y, z, x0, x2) = F(y, z, x0, s x0, x2)
        let fam = PencilFamily::new(BiPencil::from_ints(&[1, 2, 3], &[-1, -2]).unwrap());
        let total = fam.total_space_poly();
        for s in [q(0), q(5), q_frac(-2, 7)] {
            let f = fiber_polynomial(&fam, &PencilParam::Finite(s.clone()));
            for pt in [[1, 2, 3, 4], [0, 1, -1, 2], [3, -2, 1, 1]] {
                let pt: Vec<Q> = pt.iter().map(|&x| q(x)).collect();
                let full = [
                    pt[0].clone(),
                    pt[1].clone(),
                    pt[2].clone(),
                    &s * &pt[2],
                    pt[3].clone(),
                ];
                assert_eq!(f.eval(&pt), total.eval(&full));
            }
        }
    }

    #[test]
    fn special_fiber_sets() {
        assert_eq!(
            special_fibers(&fam22()),
            vec![
                PencilParam::Infinity,
                PencilParam::Finite(q(-1)),
                PencilParam::Finite(q(1))
            ]
        );
        let fam = PencilFamily::new(BiPencil::from_ints(&[0, 2], &[5]).unwrap());
        assert_eq!(
            special_fibers(&fam),
            vec![PencilParam::Infinity, PencilParam::Finite(q_frac(1, 2))]
        );
        assert_eq!(pick_generic_parameter(&fam), q(0));
        assert_eq!(pick_generic_parameter(&fam22()), q(0));
    }

    #[test]
    fn total_space_locus() {
        let r = singular_locus(&fam22(), &Locus::TotalSpace);
        assert!(r.verified);
        assert_eq!(r.components.len(), 6);
        let has = |c: [i64; 5]| {
            r.components.iter().any(
                |x| matches!(x, SingularComponent::Point { coords, .. } if coords == &p4(c.map(q))),
            )
        };
        assert!(has([0, 0, 0, 0, 1]));
        assert!(has([0, 0, 0, 1, 0]));
        // Double point of x0 - x1 and x0 - 2 x2 is (2 : 2 : 1).
        assert!(has([0, 0, 2, 2, 1]));
    }

    #[test]
    fn generic_fiber_locus() {
        let r = singular_locus(&fam22(), &Locus::Fiber(PencilParam::Finite(q(0))));
        assert!(r.verified);
        assert_eq!(r.components.len(), 1);
        assert!(
            matches!(&r.components[0], SingularComponent::Point { tag, .. } if tag == "y^4+z^4-v^2")
        );
    }

    #[test]
    fn special_fiber_locus_is_a_line() {
        let r = singular_locus(&fam22(), &Locus::Fiber(PencilParam::Finite(q(1))));
        assert!(r.verified);
        match &r.components[..] {
            [SingularComponent::Line { through, .. }] => {
                assert_eq!(through[0], p4([0, 0, 1, 1, 0].map(q)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn infinity_locus() {
        let r = singular_locus(&fam22(), &Locus::Fiber(PencilParam::Infinity));
        assert!(r.verified);
        assert_eq!(r.components.len(), 2);
    }

    #[test]
    fn a_wrong_point_is_caught() {
        let fam = fam22();
        let poly = fam.total_space_poly();
        let bogus = SingularComponent::Point {
            coords: p4([0, 0, 1, 0, 0].map(q)),
            tag: String::new(),
        };
        assert!(!component_is_singular(
            &fam,
            &Locus::TotalSpace,
            &poly,
            &bogus
        ));
    }

    #[test]
    fn action_has_order_n() {
        let act = MonodromyAction { n: 5 };
        for e in [[0, 0, 1, 2], [3, 4, 0, 0], [7, 1, 1, 1]] {
            assert_eq!(act.phase(&e, 5), 0);
        }
        assert!(act.form_is_invariant(&[1, 2, 0, 0]));
        assert!(!act.form_is_invariant(&[1, 1, 0, 0]));
    }
}
