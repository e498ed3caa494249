use crate::num::{to_f64, Real};
use crate::{Error, Result};

/// Uniform grid including both end points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid<T> {
    x_min: T,
    x_max: T,
    npoints: usize,
    spacing: T,
}

impl<T: Real> Grid<T> {
    pub fn new(x_min: T, x_max: T, npoints: usize) -> Result<Self> {
        if npoints < 3 {
            return Err(Error::invalid(
                "npoints",
                format!("need at least 3 points, got {npoints}"),
            ));
        }
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(Error::EmptyDomain {
                lo: to_f64(x_min),
                hi: to_f64(x_max),
            });
        }
        Ok(Self {
            x_min,
            x_max,
            npoints,
            spacing: (x_max - x_min) / T::from_count(npoints - 1),
        })
    }

    pub fn x_min(&self) -> T {
        self.x_min
    }

    pub fn x_max(&self) -> T {
        self.x_max
    }

    pub fn npoints(&self) -> usize {
        self.npoints
    }

    pub fn spacing(&self) -> T {
        self.spacing
    }

    pub fn point(&self, i: usize) -> T {
        if i + 1 == self.npoints {
            self.x_max
        } else {
            self.x_min + self.spacing * T::from_count(i)
        }
    }

    pub fn points(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.npoints).map(move |i| self.point(i))
    }
}

/// Square barrier of height `A/w` and width `w` standing in for `Aδ(x − center)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularizedDelta<T> {
    strength: T,
    width: T,
    center: T,
}

impl<T: Real> RegularizedDelta<T> {
    pub fn new(strength: T, width: T, center: T) -> Result<Self> {
        if !(strength >= T::zero() && strength.is_finite()) {
            return Err(Error::invalid(
                "A",
                format!("strength must be finite and non-negative, got {}", to_f64(strength)),
            ));
        }
        if !(width > T::zero() && width.is_finite()) {
            return Err(Error::invalid(
                "w",
                format!("width must be positive, got {}", to_f64(width)),
            ));
        }
        Ok(Self {
            strength,
            width,
            center,
        })
    }

    pub fn strength(&self) -> T {
        self.strength
    }

    pub fn width(&self) -> T {
        self.width
    }

    pub fn center(&self) -> T {
        self.center
    }

    /// Point value of the step potential.
    pub fn value(&self, x: T) -> T {
        if (x - self.center).abs() < self.width * T::half() {
            self.strength / self.width
        } else {
            T::zero()
        }
    }

    /// Potential averaged over each grid cell `[x_i − Δx/2, x_i + Δx/2]`, so the
    /// discrete barrier carries the full strength `A` on any grid.
    pub fn cell_averaged(&self, grid: &Grid<T>) -> Vec<T> {
        let h = grid.spacing();
        let lo = self.center - self.width * T::half();
        let hi = self.center + self.width * T::half();
        let height = self.strength / self.width;
        let sliver = h * T::lit(1e-9);
        grid.points()
            .map(|x| {
                let overlap = (x + h * T::half()).min(hi) - (x - h * T::half()).max(lo);
                if overlap > sliver {
                    height * overlap / h
                } else {
                    T::zero()
                }
            })
            .collect()
    }
}
