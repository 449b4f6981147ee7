//! Points of the W-complex and the cone structure on the total hom-space.

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::lattice::{ClassId, Lattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractError {
    #[error("coordinate {0} lies outside [0, 1]")]
    CoordinateOutOfRange(BigRational),
    #[error("chain of length {chain} needs {} coordinates, got {coords}", chain - 1)]
    CoordinateCount { chain: usize, coords: usize },
    #[error("basis point must have maximum coordinate 1, found {0}")]
    NotOnBasis(BigRational),
    #[error("cone parameter {0} lies outside [0, 1]")]
    ParameterOutOfRange(BigRational),
    #[error("chain entries are not composable")]
    NotComposable,
}

/// `f_1 o_{t_1} f_2 o_{t_2} ... f_m`, stored in diagrammatic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointRep {
    pub chain: Vec<ClassId>,
    pub coords: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeImage {
    Apex,
    Point { s: BigRational, basis: PointRep },
}

impl PointRep {
    pub fn new(chain: Vec<ClassId>, coords: Vec<BigRational>) -> Result<Self, ContractError> {
        if chain.is_empty() || coords.len() + 1 != chain.len() {
            return Err(ContractError::CoordinateCount {
                chain: chain.len().max(1),
                coords: coords.len(),
            });
        }
        Ok(PointRep { chain, coords })
    }

    pub fn max_coord(&self) -> BigRational {
        self.coords.iter().max().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_canonical(&self) -> bool {
        self.coords.iter().all(|t| !t.is_zero())
    }
}

fn check_range(t: &BigRational) -> Result<(), ContractError> {
    if *t < BigRational::zero() || *t > BigRational::one() {
        Err(ContractError::CoordinateOutOfRange(t.clone()))
    } else {
        Ok(())
    }
}

/// Composes across every zero coordinate.
pub fn canonicalize_point(p: &PointRep, lattice: &Lattice) -> Result<PointRep, ContractError> {
    for t in &p.coords {
        check_range(t)?;
    }
    let mut chain = vec![p.chain[0]];
    let mut coords = Vec::new();
    for (t, &next) in p.coords.iter().zip(&p.chain[1..]) {
        if t.is_zero() {
            let last = chain.pop().unwrap();
            chain.push(lattice.compose(last, next).map_err(|_| ContractError::NotComposable)?);
        } else {
            coords.push(t.clone());
            chain.push(next);
        }
    }
    Ok(PointRep { chain, coords })
}

/// `s = max t_i`, basis point `t_i / s`; the single-entry chain goes to the apex.
pub fn cone_beta(p: &PointRep, lattice: &Lattice) -> Result<ConeImage, ContractError> {
    let p = canonicalize_point(p, lattice)?;
    if p.coords.is_empty() {
        return Ok(ConeImage::Apex);
    }
    let s = p.max_coord();
    let coords = p.coords.iter().map(|t| t / &s).collect();
    Ok(ConeImage::Point {
        s,
        basis: PointRep { chain: p.chain, coords },
    })
}

/// Scales a basis point by `s`; `s = 0` is the apex, the full composite.
pub fn cone_alpha(s: &BigRational, basis: &PointRep, lattice: &Lattice) -> Result<PointRep, ContractError> {
    if *s < BigRational::zero() || *s > BigRational::one() {
        return Err(ContractError::ParameterOutOfRange(s.clone()));
    }
    for t in &basis.coords {
        check_range(t)?;
    }
    let m = basis.max_coord();
    if !m.is_one() {
        return Err(ContractError::NotOnBasis(m));
    }
    let scaled = PointRep {
        chain: basis.chain.clone(),
        coords: basis.coords.iter().map(|t| t * s).collect(),
    };
    canonicalize_point(&scaled, lattice)
}

/// Inverse of [`cone_beta`] applied to its output.
pub fn cone_alpha_image(image: &ConeImage, lattice: &Lattice) -> Result<PointRep, ContractError> {
    match image {
        ConeImage::Apex => Ok(PointRep {
            chain: vec![lattice.max_class()],
            coords: Vec::new(),
        }),
        ConeImage::Point { s, basis } => cone_alpha(s, basis, lattice),
    }
}
