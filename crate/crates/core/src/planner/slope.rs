use serde::{Deserialize, Serialize};

use crate::{Curve64, Surface64};

/// Slant of the tractor at one arc-length position, degrees.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlopeSample {
    pub t: f64,
    /// Inclination along the direction of travel.
    pub pitch_deg: f64,
    /// Inclination across the direction of travel.
    pub roll_deg: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SlopeProfile {
    pub samples: Vec<SlopeSample>,
    pub max_pitch_deg: f64,
    pub max_roll_deg: f64,
}

impl SlopeProfile {
    /// Pitch profile as `(arclength, angle)` pairs.
    pub fn pitch(&self) -> Vec<(f64, f64)> {
        self.samples.iter().map(|s| (s.t, s.pitch_deg)).collect()
    }

    /// Largest slant in any direction.
    pub fn max_angle_deg(&self) -> f64 {
        self.max_pitch_deg.max(self.max_roll_deg)
    }

    pub fn merge(&mut self, other: &SlopeProfile) {
        self.samples.extend_from_slice(&other.samples);
        self.max_pitch_deg = self.max_pitch_deg.max(other.max_pitch_deg);
        self.max_roll_deg = self.max_roll_deg.max(other.max_roll_deg);
    }
}

/// Pitch `atan(|grad z . T|)` and roll `atan(|grad z . N|)` every `step` metres.
pub fn slope_profile(curve: &Curve64, surface: &Surface64, step: f64) -> SlopeProfile {
    let mut out = SlopeProfile::default();
    for (t, p, tangent) in curve.sample(step) {
        let g = surface.gradient_at(p);
        let pitch_deg = g.dot(tangent).abs().atan().to_degrees();
        let roll_deg = g.cross(tangent).abs().atan().to_degrees();
        out.max_pitch_deg = out.max_pitch_deg.max(pitch_deg);
        out.max_roll_deg = out.max_roll_deg.max(roll_deg);
        out.samples.push(SlopeSample { t, pitch_deg, roll_deg });
    }
    out
}

/// Verdict of the slope check run on the optimized master line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleCheck {
    pub max_angle_deg: f64,
    pub max_pitch_deg: f64,
    pub max_roll_deg: f64,
    pub limit_deg: f64,
    pub ok: bool,
}

impl AngleCheck {
    pub fn message(&self) -> String {
        if self.ok {
            format!("Angle OK ({:.2} deg)", self.max_angle_deg)
        } else {
            format!(
                "Angle Not OK ({:.2} deg > {:.2} deg)",
                self.max_angle_deg, self.limit_deg
            )
        }
    }
}

pub fn check_angle(profile: &SlopeProfile, limit_deg: f64) -> AngleCheck {
    let max_angle_deg = profile.max_angle_deg();
    AngleCheck {
        max_angle_deg,
        max_pitch_deg: profile.max_pitch_deg,
        max_roll_deg: profile.max_roll_deg,
        limit_deg,
        ok: max_angle_deg <= limit_deg + 1e-9,
    }
}
