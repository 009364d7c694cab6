use crate::error::{Error, Result};

/// Two-point moving average of link bandwidth (bytes/ms).
///
/// `current` is the estimate used for scheduling; each measured throughput
/// is averaged with it to form the next estimate, and the estimate it
/// replaces moves to `previous`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandwidthEstimator {
    pub current: f64,
    pub previous: f64,
}

impl BandwidthEstimator {
    pub fn new(initial: f64) -> Self {
        Self { current: initial, previous: initial }
    }

    pub fn expected(&self) -> f64 {
        self.current
    }

    pub fn update(self, observed: f64) -> Result<Self> {
        if !(observed > 0.0 && observed.is_finite()) {
            return Err(Error::NonPositiveObservation(observed));
        }
        Ok(Self {
            current: (observed + self.current) / 2.0,
            previous: self.current,
        })
    }
}

/// Free-function form of [`BandwidthEstimator::update`].
pub fn update_bandwidth(estimator: BandwidthEstimator, observed: f64) -> Result<BandwidthEstimator> {
    estimator.update(observed)
}
