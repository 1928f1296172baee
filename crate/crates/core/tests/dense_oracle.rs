//! Cross-checks of the sparse exterior kernel against a dense tensor model.
//!
//! The oracle stores a k-form as its values on all 6^k index tuples and
//! implements wedge, contraction and pullback straight from the defining
//! permutation sums. It shares no code with the library beyond reading
//! coefficients.

use std::collections::HashMap;

use msforms::classify::q_endo;
use msforms::exterior::unit;
use msforms::{omega_minus, omega_plus, omega_zero, KForm, LinMap, MultiIndex, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn perm_sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] == p[j] {
                return 0;
            }
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

fn tuples(k: usize) -> Vec<Vec<usize>> {
    (0..6usize.pow(k as u32))
        .map(|mut n| {
            let mut t = vec![0; k];
            for slot in t.iter_mut().rev() {
                *slot = n % 6;
                n /= 6;
            }
            t
        })
        .collect()
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

#[derive(Clone, Debug)]
struct Dense {
    k: usize,
    values: HashMap<Vec<usize>, Q>,
}

impl Dense {
    fn value(&self, t: &[usize]) -> Q {
        self.values.get(t).cloned().unwrap_or_else(Q::zero)
    }

    fn from_form(f: &KForm) -> Self {
        let k = f.grade();
        let mut values = HashMap::new();
        for t in tuples(k) {
            let s = perm_sign(&t);
            if s == 0 {
                continue;
            }
            let mut sorted: Vec<usize> = t.iter().map(|x| x + 1).collect();
            sorted.sort();
            let c = f.coeff(MultiIndex::new(&sorted).unwrap());
            let c = c.as_rational().expect("rational test data").clone();
            if !c.is_zero() {
                values.insert(t, c * q(s));
            }
        }
        Dense { k, values }
    }

    /// Coefficient on the increasing tuple `ix` (1-based) equals the value there.
    fn coefficient(&self, ix: &[usize]) -> Q {
        let t: Vec<usize> = ix.iter().map(|i| i - 1).collect();
        self.value(&t)
    }

    /// Fills all tuples from values on increasing tuples.
    fn alternating(k: usize, increasing: HashMap<Vec<usize>, Q>) -> Dense {
        let mut values = HashMap::new();
        for t in tuples(k) {
            let s = perm_sign(&t);
            if s == 0 {
                continue;
            }
            let mut sorted = t.clone();
            sorted.sort();
            if let Some(v) = increasing.get(&sorted) {
                values.insert(t, v * q(s));
            }
        }
        Dense { k, values }
    }

    fn wedge(&self, other: &Dense) -> Dense {
        let (p, r) = (self.k, other.k);
        let n = p + r;
        let norm = q(factorial(p) * factorial(r));
        let perms = permutations(n);
        let mut increasing = HashMap::new();
        for t in tuples(n).into_iter().filter(|t| t.windows(2).all(|w| w[0] < w[1])) {
            let mut total = Q::zero();
            for s in &perms {
                let a: Vec<usize> = s[..p].iter().map(|&i| t[i]).collect();
                let b: Vec<usize> = s[p..].iter().map(|&i| t[i]).collect();
                let x = self.value(&a);
                if x.is_zero() {
                    continue;
                }
                total += x * other.value(&b) * q(perm_sign(s));
            }
            if !total.is_zero() {
                increasing.insert(t, total / &norm);
            }
        }
        Dense::alternating(n, increasing)
    }

    fn contract(&self, v: &[Q]) -> Dense {
        let mut values = HashMap::new();
        for t in tuples(self.k - 1) {
            let mut total = Q::zero();
            for (i, vi) in v.iter().enumerate() {
                let mut full = vec![i];
                full.extend(&t);
                total += vi * self.value(&full);
            }
            if !total.is_zero() {
                values.insert(t, total);
            }
        }
        Dense {
            k: self.k - 1,
            values,
        }
    }

    /// `(g^*a)(e_{t_1},…) = a(g e_{t_1},…)` by multilinear expansion.
    fn pullback(&self, g: &[Vec<Q>]) -> Dense {
        let mut values = HashMap::new();
        let all = tuples(self.k);
        for t in &all {
            let mut total = Q::zero();
            for (s, val) in &self.values {
                let mut w = val.clone();
                for (slot, &row) in s.iter().enumerate() {
                    w *= &g[row][t[slot]];
                    if w.is_zero() {
                        break;
                    }
                }
                total += w;
            }
            if !total.is_zero() {
                values.insert(t.clone(), total);
            }
        }
        Dense { k: self.k, values }
    }
}

fn same(f: &KForm, d: &Dense) -> bool {
    assert_eq!(f.grade(), d.k);
    MultiIndex::all(f.grade())
        .into_iter()
        .all(|m| f.coeff(m).as_rational().unwrap() == &d.coefficient(&m.indices()))
}

fn random_form(rng: &mut ChaCha8Rng, k: usize) -> KForm {
    let mut f = KForm::zero(k);
    for m in MultiIndex::all(k) {
        if rng.gen_bool(0.4) {
            f.add_term(m, &Scalar::from_int(rng.gen_range(-3..=3)));
        }
    }
    f
}

fn random_vector(rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..6).map(|_| Scalar::from_int(rng.gen_range(-3..=3))).collect()
}

fn to_q(v: &[Scalar]) -> Vec<Q> {
    v.iter().map(|x| x.as_rational().unwrap().clone()).collect()
}

fn mono(ix: &[usize]) -> KForm {
    KForm::monomial(ix).unwrap()
}

#[test]
fn wedge_matches_dense_model() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, r) in [(1, 1), (1, 2), (2, 2), (1, 5), (2, 3), (3, 3), (2, 4)] {
        for _ in 0..3 {
            let a = random_form(&mut rng, p);
            let b = random_form(&mut rng, r);
            let dense = Dense::from_form(&a).wedge(&Dense::from_form(&b));
            assert!(same(&a.wedge(&b).unwrap(), &dense), "grades {p},{r}");
        }
    }
}

#[test]
fn contraction_matches_dense_model() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for k in 1..=6 {
        for _ in 0..4 {
            let a = random_form(&mut rng, k);
            let v = random_vector(&mut rng);
            let dense = Dense::from_form(&a).contract(&to_q(&v));
            assert!(same(&a.interior(&v).unwrap(), &dense), "grade {k}");
        }
    }
}

#[test]
fn pullback_matches_dense_model() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for k in 1..=4 {
        let a = random_form(&mut rng, k);
        let cols: Vec<Vec<Scalar>> = (0..6).map(|_| random_vector(&mut rng)).collect();
        let g = LinMap::from_columns(&cols);
        let rows: Vec<Vec<Q>> = (0..6).map(|i| to_q(&g.matrix().row(i))).collect();
        let dense = Dense::from_form(&a).pullback(&rows);
        assert!(same(&a.pullback(&g), &dense), "grade {k}");
    }
}

#[test]
fn interior_sign_from_slot_position() {
    let d = Dense::from_form(&mono(&[1, 4, 5])).contract(&to_q(&unit(3)));
    assert_eq!(d.coefficient(&[1, 5]), q(-1));
    assert_eq!(mono(&[1, 4, 5]).interior_basis(3).unwrap(), mono(&[1, 5]).scale(&Scalar::from_int(-1)));
}

#[test]
fn contraction_wedge_example() {
    let w = omega_plus();
    let lhs = w.interior_basis(0).unwrap().wedge(&w).unwrap();
    assert_eq!(lhs, mono(&[2, 3, 4, 5, 6]));
    let dense = Dense::from_form(&w).contract(&to_q(&unit(0))).wedge(&Dense::from_form(&w));
    assert!(same(&lhs, &dense));
}

#[test]
fn permutation_pullback_swaps_terms() {
    let swap = LinMap::permutation(&[3, 4, 5, 0, 1, 2]);
    assert_eq!(omega_plus().pullback(&swap), omega_plus());
}

/// `Q e_i` from `(ι_{e_i}ω)∧ω = ι_{Qe_i}θ`, with `θ = α123456`: the
/// coefficient of the 5-form on the complement of `j` is `θ(e_j, complement)`
/// times the `j`-th component.
fn dense_q(omega: &KForm) -> Vec<Vec<Q>> {
    let d = Dense::from_form(omega);
    let theta = Dense::from_form(&KForm::volume());
    let mut q_cols = Vec::new();
    for i in 0..6 {
        let mut e = vec![Q::zero(); 6];
        e[i] = Q::one();
        let five = d.contract(&e).wedge(&d);
        let col: Vec<Q> = (0..6)
            .map(|j| {
                let comp: Vec<usize> = (0..6).filter(|&x| x != j).collect();
                let mut full = vec![j];
                full.extend(&comp);
                five.value(&comp) / theta.value(&full)
            })
            .collect();
        q_cols.push(col);
    }
    q_cols
}

#[test]
fn q_matches_dense_model() {
    let mut forms = vec![omega_plus(), omega_minus(), omega_zero()];
    for i in 0..3 {
        forms.push(msforms::sampling::sample_point(msforms::OrbitType::Complex, 5, i).unwrap().1);
    }
    for w in forms {
        let lib = q_endo(&w, &KForm::volume()).unwrap();
        let dense = dense_q(&w);
        for (j, col) in dense.iter().enumerate() {
            assert_eq!(to_q(&lib.column(j)), *col);
        }
    }
}

#[test]
fn q_of_representatives() {
    let theta = KForm::volume();
    let q_plus = q_endo(&omega_plus(), &theta).unwrap();
    assert_eq!(q_plus, LinMap::diagonal(&[1, 1, 1, -1, -1, -1].map(Scalar::from_int)));
    let q0 = q_endo(&omega_zero(), &theta).unwrap();
    let expected = [(3, 2, -2), (4, 1, 2), (5, 0, -2)];
    for j in 0..3 {
        assert!(q0.column(j).iter().all(Scalar::is_zero));
    }
    for (col, row, value) in expected {
        let c = q0.column(col);
        for (i, x) in c.iter().enumerate() {
            let want = if i == row { Scalar::from_int(value) } else { Scalar::zero() };
            assert_eq!(*x, want, "column {col}");
        }
    }
    let doubled = omega_minus().scale(&Scalar::from_int(2));
    assert_eq!(
        q_endo(&doubled, &theta).unwrap(),
        q_endo(&omega_minus(), &theta).unwrap().scale(&Scalar::from_int(4))
    );
}

#[test]
fn dense_model_sanity() {
    let d = Dense::from_form(&mono(&[1, 2, 3]));
    assert_eq!(d.value(&[1, 0, 2]), q(-1));
    assert_eq!(d.value(&[0, 0, 2]), q(0));
    assert!(d.value(&[2, 0, 1]).is_positive());
}
