use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{FieldElement, FrobeniusMap, Tower};
use crate::error::Result;
use crate::field::Field;

/// One level of a tower viewed as a [`Field`].
#[derive(Clone)]
pub struct LevelField {
    tower: Arc<Tower>,
    level: usize,
}

impl std::fmt::Debug for LevelField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LevelField({}, level {})", self.tower.describe(), self.level)
    }
}

impl LevelField {
    pub fn new(tower: Tower, level: usize) -> Self {
        assert!(level <= tower.height(), "level {level} is above the tower top");
        Self {
            tower: Arc::new(tower),
            level,
        }
    }

    /// The top level of `tower`.
    pub fn top(tower: Tower) -> Self {
        let level = tower.height();
        Self::new(tower, level)
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Same tower, another level.
    pub fn at_level(&self, level: usize) -> Self {
        assert!(level <= self.tower.height());
        Self {
            tower: self.tower.clone(),
            level,
        }
    }

    /// Embed an element of a lower level of the same tower.
    pub fn lift(&self, a: &FieldElement) -> Result<FieldElement> {
        self.tower.embed(a, self.level)
    }

    pub fn generator(&self) -> FieldElement {
        self.tower.generator(self.level)
    }

    pub fn parse(&self, s: &str) -> Result<FieldElement> {
        super::text::parse_element(&self.tower, self.level, s)
    }
}

impl Field for LevelField {
    type Elem = FieldElement;
    type Frob = FrobeniusMap;

    fn characteristic(&self) -> u32 {
        self.tower.p()
    }

    fn degree(&self) -> usize {
        self.tower.dim(self.level)
    }

    fn cardinality(&self) -> BigUint {
        self.tower.cardinality(self.level).clone()
    }

    fn small_cardinality(&self) -> Option<u64> {
        self.tower.cardinality(self.level).to_u64()
    }

    fn zero(&self) -> FieldElement {
        self.tower.zero(self.level)
    }

    fn one(&self) -> FieldElement {
        self.tower.one(self.level)
    }

    fn from_int(&self, n: i64) -> FieldElement {
        self.tower.constant(self.level, n)
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        debug_assert!(a.level == self.level && b.level == self.level);
        self.tower.add_unchecked(a, b)
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        debug_assert!(a.level == self.level && b.level == self.level);
        self.tower.sub_unchecked(a, b)
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        self.tower.neg(a)
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        debug_assert!(a.level == self.level && b.level == self.level);
        self.tower.mul_unchecked(a, b)
    }

    fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.tower.inv_unchecked(a)
    }

    fn pow(&self, a: &FieldElement, e: &BigUint) -> FieldElement {
        self.tower.pow(a, e)
    }

    fn frobenius(&self, a: &FieldElement) -> FieldElement {
        let map = self.tower.frobenius_map_base(self.level);
        self.tower.apply_map(&map, a)
    }

    fn pth_root(&self, a: &FieldElement) -> FieldElement {
        let d = self.tower.dim(self.level) as u64;
        let map = self.tower.frobenius_map(self.level, d - 1);
        self.tower.apply_map(&map, a)
    }

    fn element(&self, index: u64) -> FieldElement {
        self.tower.element_by_index(self.level, &BigUint::from(index))
    }

    fn basis_element(&self, i: usize) -> FieldElement {
        let mut c = vec![0; self.degree()];
        c[i] = 1;
        self.tower.element_from_residues(self.level, c).unwrap()
    }

    fn index(&self, a: &FieldElement) -> Option<u64> {
        self.tower.index_of(a).to_u64()
    }

    fn is_square(&self, a: &FieldElement) -> Result<bool> {
        self.tower.is_square(a)
    }

    fn is_cube(&self, a: &FieldElement) -> bool {
        self.tower.is_cube(a)
    }

    fn absolute_trace(&self, a: &FieldElement) -> u32 {
        self.tower.absolute_trace(a)
    }

    fn format(&self, a: &FieldElement) -> String {
        self.tower.format(a)
    }

    fn residues(&self, a: &FieldElement) -> Vec<u32> {
        a.coeffs().to_vec()
    }

    fn frob_map(&self, j: u64) -> FrobeniusMap {
        self.tower.frobenius_map(self.level, j)
    }

    fn frob_compose(&self, a: &FrobeniusMap, b: &FrobeniusMap) -> FrobeniusMap {
        self.tower.compose_maps(a, b)
    }

    fn frob_apply(&self, m: &FrobeniusMap, a: &FieldElement) -> FieldElement {
        self.tower.apply_map(m, a)
    }
}
