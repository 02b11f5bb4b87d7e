use std::sync::Arc;

use super::{check_same_ring, PolyError, Polynomial, Rational, Ring};

/// Algebra homomorphism between polynomial rings, given by the image of each
/// source variable.
#[derive(Debug, Clone, PartialEq)]
pub struct RingMap {
    source: Arc<Ring>,
    target: Arc<Ring>,
    images: Vec<Polynomial>,
}

impl RingMap {
    pub fn new(source: &Arc<Ring>, target: &Arc<Ring>, images: Vec<Polynomial>) -> Result<Self, PolyError> {
        if images.len() != source.nvars() {
            return Err(PolyError::ArityMismatch {
                expected: source.nvars(),
                got: images.len(),
            });
        }
        for img in &images {
            check_same_ring(img.ring(), target)?;
        }
        Ok(RingMap {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn identity(ring: &Arc<Ring>) -> Self {
        RingMap {
            source: ring.clone(),
            target: ring.clone(),
            images: ring.generators(),
        }
    }

    pub fn source(&self) -> &Arc<Ring> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Ring> {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image_of(&self, index: usize) -> &Polynomial {
        &self.images[index]
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, PolyError> {
        f.substitute(self)
    }
}

/// A point of affine space, coordinates in ring-variable order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    ring: Arc<Ring>,
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(ring: &Arc<Ring>, coords: Vec<Rational>) -> Result<Self, PolyError> {
        if coords.len() != ring.nvars() {
            return Err(PolyError::ArityMismatch {
                expected: ring.nvars(),
                got: coords.len(),
            });
        }
        Ok(Point {
            ring: ring.clone(),
            coords,
        })
    }

    pub fn origin(ring: &Arc<Ring>) -> Self {
        Point {
            ring: ring.clone(),
            coords: vec![Rational::default(); ring.nvars()],
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn coordinates(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coordinate(&self, index: usize) -> &Rational {
        &self.coords[index]
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}
