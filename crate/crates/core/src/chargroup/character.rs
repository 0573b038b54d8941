//! Dirichlet characters of `(F_q[T]/N)^*` with values in Q/Z, subgroups
//! of the character group, and the genus-field computation for subfields of
//! cyclotomic function fields.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use super::qz::QZ;
use super::units::UnitGroup;
use crate::error::{Error, Result};
use crate::fq::is_prime;
use crate::linalg::ModLattice;
use crate::polyring::{is_irreducible, Poly};

/// Largest subgroup whose elements are listed explicitly.
pub const MAX_LISTED: u64 = 100_000;

#[derive(Clone)]
pub struct Character {
    group: Arc<UnitGroup>,
    exps: Vec<u64>,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.group.modulus() == other.group.modulus() && self.exps == other.exps
    }
}

impl Eq for Character {}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Character(mod {}, {:?} of {:?})", self.group.modulus(), self.exps, self.group.orders())
    }
}

impl Character {
    /// `χ(g_i) = exps[i] / d_i`.
    pub fn new(group: &Arc<UnitGroup>, exps: &[i64]) -> Result<Character> {
        if exps.len() != group.rank() {
            return Err(Error::Precondition(format!(
                "character needs {} exponents for modulus {}, got {}",
                group.rank(),
                group.modulus(),
                exps.len()
            )));
        }
        let exps = exps
            .iter()
            .zip(group.orders())
            .map(|(&c, &d)| c.rem_euclid(d as i64) as u64)
            .collect();
        Ok(Character { group: group.clone(), exps })
    }

    pub fn trivial(group: &Arc<UnitGroup>) -> Character {
        Character { group: group.clone(), exps: vec![0; group.rank()] }
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn modulus(&self) -> &Poly {
        self.group.modulus()
    }

    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&c| c == 0)
    }

    pub fn order(&self) -> u64 {
        self.exps
            .iter()
            .zip(self.group.orders())
            .fold(1, |acc, (&c, &d)| acc.lcm(&(d / c.gcd(&d))))
    }

    pub fn value_at_coords(&self, w: &[u64]) -> QZ {
        let d = self.group.exponent();
        let num: i128 = self
            .exps
            .iter()
            .zip(w)
            .zip(self.group.orders())
            .map(|((&c, &x), &di)| c as i128 * x as i128 * (d / di) as i128)
            .sum();
        QZ::new(num, d)
    }

    pub fn eval(&self, a: &Poly) -> Result<QZ> {
        Ok(self.value_at_coords(&self.group.dlog(a)?))
    }

    fn same_group(&self, other: &Character) -> Result<()> {
        if self.modulus() != other.modulus() {
            return Err(Error::Precondition(format!(
                "characters have different moduli {} and {}",
                self.modulus(),
                other.modulus()
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Character) -> Result<Character> {
        self.same_group(other)?;
        let exps: Vec<i64> = self.exps.iter().zip(&other.exps).map(|(a, b)| (a + b) as i64).collect();
        Character::new(&self.group, &exps)
    }

    pub fn pow(&self, k: i64) -> Character {
        let exps: Vec<i64> = self
            .exps
            .iter()
            .zip(self.group.orders())
            .map(|(&c, &d)| (c as i128 * k as i128).rem_euclid(d as i128) as i64)
            .collect();
        Character::new(&self.group, &exps).unwrap()
    }

    /// Character with `χ(g_i) = v_i` on the basis.
    fn from_values(group: &Arc<UnitGroup>, values: &[QZ]) -> Result<Character> {
        let exps = values
            .iter()
            .zip(group.orders())
            .map(|(v, &d)| {
                if d % v.den() != 0 {
                    return Err(Error::Invariant(format!("value {} incompatible with generator order {}", v, d)));
                }
                Ok((v.num() * (d / v.den())) as i64)
            })
            .collect::<Result<Vec<_>>>()?;
        Character::new(group, &exps)
    }

    /// `χ ∘ red` on a modulus divisible by this character's modulus.
    pub fn lift_to(&self, big: &Arc<UnitGroup>) -> Result<Character> {
        if !self.modulus().divides(big.modulus()) {
            return Err(Error::Precondition(format!("{} does not divide {}", self.modulus(), big.modulus())));
        }
        let values = big
            .basis()
            .iter()
            .map(|g| self.eval(&g.rem(self.modulus())))
            .collect::<Result<Vec<_>>>()?;
        Character::from_values(big, &values)
    }

    /// The components `χ_P` (still as characters modulo `N`), one per prime
    /// dividing `N`, in factor order. Their product is `χ`.
    pub fn local_parts(&self) -> Result<Vec<(Poly, Character)>> {
        let g = &self.group;
        (0..g.locals.len())
            .map(|idx| {
                let values = g
                    .basis()
                    .iter()
                    .map(|b| self.eval(&g.lift_local(idx, b)))
                    .collect::<Result<Vec<_>>>()?;
                Ok((g.locals[idx].prime.clone(), Character::from_values(g, &values)?))
            })
            .collect()
    }

    /// Smallest `f = Π P^β` such that `χ` factors through `(F_q[T]/f)^*`.
    pub fn conductor(&self) -> Result<Poly> {
        let g = &self.group;
        let mut out = Poly::one(g.field());
        for (idx, l) in g.locals.iter().enumerate() {
            let mut beta = l.alpha;
            for b in 0..=l.alpha {
                let trivial = l
                    .kernel_gens(b)
                    .iter()
                    .map(|k| self.eval(&g.lift_local(idx, k)))
                    .collect::<Result<Vec<_>>>()?
                    .iter()
                    .all(|v| v.is_zero());
                if trivial {
                    beta = b;
                    break;
                }
            }
            out = &out * &l.prime.pow(beta as u64);
        }
        Ok(out)
    }
}

/// Which `l`-th root of unity `A^((q^d - 1)/l) mod P` is, as `k` with the
/// value equal to `ζ^k`, `ζ = g^((q-1)/l)` for the field's primitive element.
pub fn residue_symbol(p: &Poly, l: u32, a: &Poly) -> Result<u64> {
    let f = p.field();
    let q = f.q() as u64;
    let d = p.degree().unwrap_or(0) as u32;
    let r = a.rem(p);
    if r.is_zero() {
        return Err(Error::Precondition(format!("{} is divisible by {}", a, p)));
    }
    let e = (q.pow(d) - 1) / l as u64;
    let v = r.pow_mod(e, p);
    if !v.is_constant() {
        return Err(Error::Invariant("power residue is not a constant".into()));
    }
    let step = (q - 1) / l as u64;
    let lg = f.log(v.lead()).unwrap() as u64;
    if !lg.is_multiple_of(step) {
        return Err(Error::Invariant("power residue is not an l-th root of unity".into()));
    }
    Ok(lg / step)
}

fn check_residue_args(p: &Poly, l: u32) -> Result<()> {
    let q = p.field().q();
    if l < 2 || !is_prime(l as u64) {
        return Err(Error::Precondition(format!("l = {} is not prime", l)));
    }
    if !(q - 1).is_multiple_of(l) {
        return Err(Error::Precondition(format!("l = {} does not divide q - 1 = {}", l, q - 1)));
    }
    if !p.is_monic() || !is_irreducible(p)? {
        return Err(Error::Precondition(format!("{} is not monic irreducible", p)));
    }
    Ok(())
}

/// The order-`l` character `A -> (A/P)_l^e` of `(F_q[T]/P)^*`.
pub fn residue_character(p: &Poly, l: u32, e: u32) -> Result<Character> {
    check_residue_args(p, l)?;
    if (e as u64).is_multiple_of(l as u64) {
        return Err(Error::Precondition(format!("exponent {} must be prime to l = {}", e, l)));
    }
    let group = Arc::new(UnitGroup::new(p)?);
    residue_character_on(&group, p, l, e)
}

/// [`residue_character`] composed with reduction from the group's modulus,
/// which must be divisible by `P`.
pub fn residue_character_on(group: &Arc<UnitGroup>, p: &Poly, l: u32, e: u32) -> Result<Character> {
    check_residue_args(p, l)?;
    if !p.divides(group.modulus()) {
        return Err(Error::Precondition(format!("{} does not divide {}", p, group.modulus())));
    }
    let values = group
        .basis()
        .iter()
        .map(|b| Ok(QZ::new(residue_symbol(p, l, b)? as i128 * e as i128, l as u64)))
        .collect::<Result<Vec<_>>>()?;
    Character::from_values(group, &values)
}

/// A subgroup of the character group of `(F_q[T]/N)^*`, stored as the
/// lattice of exponent vectors (containing `⊕ d_i Z`).
#[derive(Clone)]
pub struct CharSubgroup {
    group: Arc<UnitGroup>,
    gens: Vec<Character>,
    lattice: ModLattice,
}

impl fmt::Debug for CharSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharSubgroup(mod {}, order {})", self.group.modulus(), self.order())
    }
}

impl CharSubgroup {
    pub fn new(group: &Arc<UnitGroup>, gens: Vec<Character>) -> Result<CharSubgroup> {
        let mut lattice = ModLattice::new(group.rank(), group.exponent());
        for (i, &d) in group.orders().iter().enumerate() {
            let mut v = vec![0; group.rank()];
            v[i] = d as i64;
            lattice.insert(&v);
        }
        for c in &gens {
            if c.modulus() != group.modulus() {
                return Err(Error::Precondition(format!(
                    "character modulus {} differs from {}",
                    c.modulus(),
                    group.modulus()
                )));
            }
            let v: Vec<i64> = c.exps.iter().map(|&x| x as i64).collect();
            lattice.insert(&v);
        }
        Ok(CharSubgroup { group: group.clone(), gens, lattice })
    }

    /// Subgroup generated by `gens`, all over a common modulus.
    pub fn generated_by(gens: Vec<Character>) -> Result<CharSubgroup> {
        let group = gens
            .first()
            .ok_or_else(|| Error::Precondition("empty generator list".into()))?
            .group
            .clone();
        CharSubgroup::new(&group, gens)
    }

    pub fn trivial(group: &Arc<UnitGroup>) -> CharSubgroup {
        CharSubgroup::new(group, Vec::new()).unwrap()
    }

    pub fn full(group: &Arc<UnitGroup>) -> CharSubgroup {
        let gens = (0..group.rank())
            .map(|i| {
                let mut v = vec![0; group.rank()];
                v[i] = 1;
                Character::new(group, &v).unwrap()
            })
            .collect();
        CharSubgroup::new(group, gens).unwrap()
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn generators(&self) -> &[Character] {
        &self.gens
    }

    /// A canonical generating set read off the Hermite form.
    pub fn canonical_generators(&self) -> Vec<Character> {
        self.lattice
            .rows()
            .iter()
            .map(|r| {
                let v: Vec<i64> = r.iter().map(|&x| x as i64).collect();
                Character::new(&self.group, &v).unwrap()
            })
            .filter(|c| !c.is_trivial())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn order(&self) -> u64 {
        (self.group.order() as u128 / self.lattice.index()) as u64
    }

    pub fn contains(&self, c: &Character) -> bool {
        c.modulus() == self.group.modulus() && {
            let v: Vec<i64> = c.exps.iter().map(|&x| x as i64).collect();
            self.lattice.contains(&v)
        }
    }

    pub fn is_subgroup_of(&self, other: &CharSubgroup) -> bool {
        self.gens.iter().all(|c| other.contains(c))
    }

    pub fn join(&self, other: &CharSubgroup) -> Result<CharSubgroup> {
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        CharSubgroup::new(&self.group, gens)
    }

    /// All elements, sorted; refuses groups larger than [`MAX_LISTED`].
    pub fn elements(&self) -> Result<Vec<Character>> {
        if self.order() > MAX_LISTED {
            return Err(Error::SizeBound(format!("character group of order {} too large to list", self.order())));
        }
        let mut seen: BTreeSet<Character> = BTreeSet::new();
        let start = Character::trivial(&self.group);
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for g in &self.gens {
                let n = c.mul(g)?;
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// `{χ in self : χ(a) = 0}`.
    pub fn kernel_at(&self, a: &Poly) -> Result<CharSubgroup> {
        let k = self.group.rank();
        let d = self.group.exponent();
        let w = self.group.dlog(a)?;
        let phi: Vec<i128> = w
            .iter()
            .zip(self.group.orders())
            .map(|(&x, &di)| x as i128 * (d / di) as i128)
            .collect();
        // lattice {(c·φ + d t, c)}: its part with first coordinate 0 is the kernel
        let mut aug = ModLattice::new(k + 1, d);
        for row in self.lattice.rows() {
            let dot: i128 = row.iter().zip(&phi).map(|(a, b)| a * b).sum();
            let mut v = vec![dot.rem_euclid(d as i128) as i64];
            v.extend(row.iter().map(|&x| x as i64));
            aug.insert(&v);
        }
        let gens = aug.rows()[1..]
            .iter()
            .map(|r| {
                let v: Vec<i64> = r[1..].iter().map(|&x| x as i64).collect();
                Character::new(&self.group, &v)
            })
            .collect::<Result<Vec<_>>>()?;
        CharSubgroup::new(&self.group, gens)
    }

    /// The subgroup generated by the local parts at the prime in position
    /// `idx` of the factorization of `N`.
    pub fn local_subgroup(&self, idx: usize) -> Result<CharSubgroup> {
        let gens = self
            .gens
            .iter()
            .map(|c| Ok(c.local_parts()?.swap_remove(idx).1))
            .collect::<Result<Vec<_>>>()?;
        CharSubgroup::new(&self.group, gens)
    }
}

impl PartialOrd for Character {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Character {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.modulus(), &self.exps).cmp(&(other.modulus(), &other.exps))
    }
}

/// Character-side description of the genus field of the subfield of
/// `k(Λ_N)` fixed by the kernel of `X`.
#[derive(Debug, Clone)]
pub struct GenusCharacters {
    pub x: CharSubgroup,
    /// product of the local groups `X_P`
    pub y: CharSubgroup,
    /// characters of `Y` trivial on `F_q^*`
    pub y1: CharSubgroup,
    /// character group of the genus field, `X·Y_1`
    pub kg: CharSubgroup,
    pub degree: u64,
    /// `(P, |X_P|)` for every prime dividing `N`
    pub ramification: Vec<(Poly, u64)>,
    /// ramification index of the infinite place in `K`
    pub infinity_e: u64,
}

pub fn genus_from_characters(x: &CharSubgroup) -> Result<GenusCharacters> {
    let group = x.group().clone();
    let field = group.field().clone();
    let nlocal = group.primes().count();
    let mut ramification = Vec::with_capacity(nlocal);
    let mut y_gens = Vec::new();
    for (idx, (p, _)) in group.primes().enumerate() {
        let xp = x.local_subgroup(idx)?;
        ramification.push((p.clone(), xp.order()));
        y_gens.extend(xp.gens.iter().cloned());
    }
    let y = CharSubgroup::new(&group, y_gens)?;
    let constants = Poly::constant(&field, field.primitive());
    let y1 = y.kernel_at(&constants)?;
    let kg = x.join(&y1)?;
    let degree = kg.order() / x.order();
    let infinity_e = x.order() / x.kernel_at(&constants)?.order();
    Ok(GenusCharacters { x: x.clone(), y, y1, kg, degree, ramification, infinity_e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::Field;
    use crate::parse::parse_poly;

    fn setup(q: u64, n: &str) -> (Field, Arc<UnitGroup>) {
        let f = Field::from_q(q).unwrap();
        let g = Arc::new(UnitGroup::new(&parse_poly(&f, n).unwrap()).unwrap());
        (f, g)
    }

    #[test]
    fn residue_character_values() {
        let f = Field::prime(3).unwrap();
        let t = Poly::t(&f);
        let chi = residue_character(&t, 2, 1).unwrap();
        assert_eq!(chi.eval(&Poly::constant(&f, f.from_int(2))).unwrap(), QZ::new(1, 2));
        assert_eq!(chi.eval(&Poly::one(&f)).unwrap(), QZ::ZERO);
        let f5 = Field::prime(5).unwrap();
        let chi = residue_character(&Poly::t(&f5), 2, 1).unwrap();
        assert_eq!(chi.eval(&Poly::constant(&f5, f5.from_int(4))).unwrap(), QZ::ZERO);
        assert!(residue_character(&Poly::t(&f5), 3, 1).is_err());
        assert!(residue_character(&Poly::t(&f5), 2, 2).is_err());
    }

    #[test]
    fn local_parts_of_product_character() {
        let (f, g) = setup(3, "T(T+1)");
        let t = Poly::t(&f);
        let t1 = parse_poly(&f, "T+1").unwrap();
        let chi_t = residue_character_on(&g, &t, 2, 1).unwrap();
        let chi_t1 = residue_character_on(&g, &t1, 2, 1).unwrap();
        let chi = chi_t.mul(&chi_t1).unwrap();
        let parts = chi.local_parts().unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].1, chi_t);
        assert_eq!(parts[1].1, chi_t1);
        let back = parts[0].1.mul(&parts[1].1).unwrap();
        assert_eq!(back, chi);
        let triv = Character::trivial(&g);
        assert!(triv.local_parts().unwrap().iter().all(|(_, c)| c.is_trivial()));
    }

    #[test]
    fn conductor_examples() {
        let (f, g) = setup(3, "T^2");
        let t = Poly::t(&f);
        assert!(Character::trivial(&g).conductor().unwrap().is_one());
        let quad = residue_character(&t, 2, 1).unwrap().lift_to(&g).unwrap();
        assert_eq!(quad.conductor().unwrap(), t);
        let faithful = Character::new(&g, &[1]).unwrap();
        assert_eq!(faithful.order(), 6);
        assert_eq!(faithful.conductor().unwrap(), t.pow(2));
    }

    #[test]
    fn genus_examples() {
        let (f, g) = setup(3, "T(T+1)");
        let x = CharSubgroup::generated_by(vec![residue_character_on(&g, &Poly::t(&f), 2, 1)
            .unwrap()
            .mul(&residue_character_on(&g, &parse_poly(&f, "T+1").unwrap(), 2, 1).unwrap())
            .unwrap()])
        .unwrap();
        let gc = genus_from_characters(&x).unwrap();
        assert_eq!(gc.y.order(), 4);
        assert_eq!(gc.y1.order(), 2);
        assert_eq!(gc.degree, 1);

        let (f, g) = setup(5, "T(T+1)(T+2)");
        let mut chi = Character::trivial(&g);
        for s in ["T", "T+1", "T+2"] {
            chi = chi.mul(&residue_character_on(&g, &parse_poly(&f, s).unwrap(), 2, 1).unwrap()).unwrap();
        }
        let gc = genus_from_characters(&CharSubgroup::generated_by(vec![chi]).unwrap()).unwrap();
        assert_eq!(gc.y.order(), 8);
        assert_eq!(gc.y1.order(), 4);
        assert_eq!(gc.degree, 4);
        assert!(gc.ramification.iter().all(|(_, e)| *e == 2));

        let (_, g) = setup(3, "T");
        let gc = genus_from_characters(&CharSubgroup::full(&g)).unwrap();
        assert_eq!(gc.degree, 1);
        assert_eq!(gc.y1.order(), 1);
        let gc = genus_from_characters(&CharSubgroup::trivial(&g)).unwrap();
        assert_eq!(gc.degree, 1);
    }

    #[test]
    fn elements_and_kernels() {
        let (f, g) = setup(5, "T^2(T+1)");
        let full = CharSubgroup::full(&g);
        assert_eq!(full.order(), 80);
        assert_eq!(full.elements().unwrap().len(), 80);
        let c = Poly::constant(&f, f.primitive());
        let ker = full.kernel_at(&c).unwrap();
        let brute = full.elements().unwrap().into_iter().filter(|x| x.eval(&c).unwrap().is_zero()).count();
        assert_eq!(ker.order() as usize, brute);
        assert!(ker.is_subgroup_of(&full));
    }
}
