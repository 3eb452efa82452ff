use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::scalars::{Params, Scalar};
use std::sync::Arc;

/// A constructor that rebuilds a polynomial from a parameter set.
pub type Builder<S> = Arc<dyn Fn(&Params<S>) -> Result<LaurentPoly<S>> + Send + Sync>;

/// A polynomial together with the recipe that produced it, so that the
/// coefficient involution can be realised by rebuilding at inverted
/// parameters.
#[derive(Clone)]
pub struct Parametric<S> {
    pub name: String,
    pub params: Params<S>,
    builder: Builder<S>,
}

/// Which of the three involutions on Laurent polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Involution {
    /// Coefficient conjugation only.
    Circ,
    /// `z -> 1/z` only.
    Bar,
    /// Both.
    Star,
}

impl<S: Scalar> Parametric<S> {
    pub fn new(
        name: impl Into<String>,
        params: Params<S>,
        builder: impl Fn(&Params<S>) -> Result<LaurentPoly<S>> + Send + Sync + 'static,
    ) -> Self {
        Parametric { name: name.into(), params, builder: Arc::new(builder) }
    }

    /// A polynomial whose coefficients do not depend on the parameters.
    pub fn constant(name: impl Into<String>, params: Params<S>, f: LaurentPoly<S>) -> Self {
        Self::new(name, params, move |_| Ok(f.clone()))
    }

    pub fn realize(&self) -> Result<LaurentPoly<S>> {
        (self.builder)(&self.params)
    }

    pub fn realize_at(&self, p: &Params<S>) -> Result<LaurentPoly<S>> {
        (self.builder)(p)
    }

    pub fn builder(&self) -> Builder<S> {
        self.builder.clone()
    }

    /// Same recipe at other parameters.
    pub fn with_params(&self, params: Params<S>) -> Self {
        Parametric { name: self.name.clone(), params, builder: self.builder.clone() }
    }

    /// A derived recipe `p -> g(p, self(p))`.
    pub fn then(
        &self,
        name: impl Into<String>,
        g: impl Fn(&Params<S>, LaurentPoly<S>) -> Result<LaurentPoly<S>> + Send + Sync + 'static,
    ) -> Self {
        let inner = self.builder.clone();
        Self::new(name, self.params.clone(), move |p| g(p, inner(p)?))
    }

    pub fn involution(&self, which: Involution) -> Result<LaurentPoly<S>> {
        match which {
            Involution::Bar => Ok(self.realize()?.bar()),
            Involution::Circ => self.realize_at(&self.params.star()),
            Involution::Star => Ok(self.realize_at(&self.params.star())?.bar()),
        }
    }
}

/// Involution of a raw polynomial; conjugation needs a tower in which the
/// generators can be inverted directly.
pub fn involution_raw<S: Scalar>(f: &LaurentPoly<S>, which: Involution) -> Result<LaurentPoly<S>> {
    let conj = |f: &LaurentPoly<S>| -> Result<LaurentPoly<S>> {
        let mut out = LaurentPoly::zero();
        for (n, c) in f.terms() {
            out.add_term(*n, &c.invert_generators().ok_or(Error::NoProvenance)?);
        }
        Ok(out)
    };
    match which {
        Involution::Bar => Ok(f.bar()),
        Involution::Circ => conj(f),
        Involution::Star => Ok(conj(f)?.bar()),
    }
}
