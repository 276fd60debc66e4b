/// A closed time interval in seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub start: f64,
    pub end: f64,
}

impl Interval {
    pub fn new(start: f64, end: f64) -> Self {
        Interval { start, end }
    }

    pub fn length(&self) -> f64 {
        self.end - self.start
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.start && t <= self.end
    }

    /// Intersection-over-union with another interval; 0 when disjoint.
    pub fn iou(&self, other: &Interval) -> f64 {
        let inter = (self.end.min(other.end) - self.start.max(other.start)).max(0.0);
        let union = (self.end.max(other.end) - self.start.min(other.start)).max(0.0);
        if union <= 0.0 {
            if inter == 0.0 && self.length() == 0.0 && other.length() == 0.0 && self.start == other.start {
                return 1.0;
            }
            return 0.0;
        }
        inter / union
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iou_cases() {
        let a = Interval::new(0.0, 2.0);
        assert!((a.iou(&Interval::new(1.0, 3.0)) - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(a.iou(&Interval::new(5.0, 6.0)), 0.0);
        assert_eq!(a.iou(&a), 1.0);
    }
}
