//! Scenario configuration: flat `key = value` files, flag overrides, and
//! per-mode defaults with fail-fast validation.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use metric_ripple::consts::{ELECTRON_MASS, HBAR, SPEED_OF_LIGHT};
use metric_ripple::fringe::{
    REFERENCE_A2, REFERENCE_SCREEN_DISTANCE, REFERENCE_SEED, REFERENCE_SLIT_SEPARATION,
    REFERENCE_WAVELENGTH,
};
use metric_ripple::pulse::momentum_of;
use metric_ripple::KernelConvention;

/// Subcommand being executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Table1,
    Cobweb,
    TwoSlit,
    Geodesic,
    Pulse,
    Check,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "table1" => Some(Self::Table1),
            "cobweb" => Some(Self::Cobweb),
            "two-slit" => Some(Self::TwoSlit),
            "geodesic" => Some(Self::Geodesic),
            "pulse" => Some(Self::Pulse),
            "check" => Some(Self::Check),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Table1 => "table1",
            Self::Cobweb => "cobweb",
            Self::TwoSlit => "two-slit",
            Self::Geodesic => "geodesic",
            Self::Pulse => "pulse",
            Self::Check => "check",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Fully resolved run configuration. Every field carries a documented
/// default (the reference two-slit dataset where applicable), so an empty
/// config file is a valid scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub mode: Mode,

    // two-slit geometry
    pub d: f64,
    pub big_d: f64,
    pub lambda: f64,

    // packet
    pub a11: f64,
    pub a12: f64,
    pub a13: f64,
    pub a22: f64,
    pub a23: f64,
    pub a33: f64,
    pub sigma: f64,
    /// Carrier angular frequency; None means the wave rides at c
    /// (omega = c k').
    pub omega: Option<f64>,
    pub z_center: f64,

    // fringe map
    pub a2: f64,
    pub x0: f64,
    pub n_iterates: usize,
    pub cobweb_steps: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub literal_table_d: bool,

    // screen scan
    pub profile_min: f64,
    pub profile_max: f64,
    pub profile_n: usize,
    /// Entry height of the displaced particle; None means |a12|.
    pub y0: Option<f64>,

    // geodesic
    pub x0_x: f64,
    pub x0_y: f64,
    pub x0_z: f64,
    pub v0_x: f64,
    pub v0_y: f64,
    pub v0_z: f64,
    /// None: four carrier periods.
    pub t_end: Option<f64>,
    /// None: t_end / 1024.
    pub dt: Option<f64>,

    // pulse transform
    pub a: f64,
    pub m: f64,
    pub delta_t: f64,
    /// Pulse speed; None means h / (lambda m), the momentum the carrier
    /// wavelength implies.
    pub v: Option<f64>,
    pub pulse_t: f64,
    pub convention: KernelConvention,
    pub check_oracle: bool,

    pub out: PathBuf,
}

impl Scenario {
    pub fn defaults(mode: Mode) -> Self {
        Self {
            mode,
            d: REFERENCE_SLIT_SEPARATION,
            big_d: REFERENCE_SCREEN_DISTANCE,
            lambda: REFERENCE_WAVELENGTH,
            a11: 0.0,
            a12: match mode {
                Mode::Geodesic => 1e-6,
                _ => REFERENCE_A2.sqrt(),
            },
            a13: 0.0,
            a22: 0.0,
            a23: 0.0,
            a33: 0.0,
            sigma: 1e-5,
            omega: None,
            z_center: 0.0,
            a2: REFERENCE_A2,
            x0: REFERENCE_SEED,
            n_iterates: 14,
            cobweb_steps: 14,
            tol: 1e-12,
            max_iter: 10_000,
            literal_table_d: false,
            profile_min: match mode {
                Mode::Pulse => -1.5e-10,
                _ => -2e-5,
            },
            profile_max: match mode {
                Mode::Pulse => 1.5e-10,
                _ => 2e-5,
            },
            profile_n: 401,
            y0: None,
            x0_x: 0.0,
            x0_y: 6e-6,
            x0_z: 0.0,
            v0_x: 0.0,
            v0_y: 0.0,
            v0_z: 0.0,
            t_end: None,
            dt: None,
            a: 1.0,
            m: ELECTRON_MASS,
            delta_t: 1e-18,
            v: None,
            pulse_t: 0.0,
            convention: KernelConvention::Standard,
            check_oracle: false,
            out: PathBuf::from("."),
        }
    }

    pub fn k_prime(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.lambda
    }

    pub fn omega_eff(&self) -> f64 {
        self.omega.unwrap_or(SPEED_OF_LIGHT * self.k_prime())
    }

    pub fn y0_eff(&self) -> f64 {
        self.y0.unwrap_or_else(|| self.a12.abs())
    }

    pub fn t_end_eff(&self) -> f64 {
        self.t_end
            .unwrap_or(4.0 * (2.0 * std::f64::consts::PI) / self.omega_eff())
    }

    pub fn dt_eff(&self) -> f64 {
        self.dt.unwrap_or(self.t_end_eff() / 1024.0)
    }

    pub fn v_eff(&self) -> f64 {
        self.v
            .unwrap_or_else(|| momentum_of(self.lambda).map(|p| p / self.m).unwrap_or(0.0))
    }

    /// Free-particle dispersion hbar k'^2 / (2 m) for the pulse carrier.
    pub fn pulse_omega(&self) -> f64 {
        match self.omega {
            Some(w) => w,
            None => HBAR * self.k_prime() * self.k_prime() / (2.0 * self.m),
        }
    }

    /// Slit separation honoring the --literal-table-d switch.
    pub fn d_eff(&self) -> f64 {
        if self.literal_table_d {
            metric_ripple::fringe::LITERAL_SLIT_SEPARATION
        } else {
            self.d
        }
    }

    /// Map gain c = k' (d / D), associated exactly as the reference map
    /// builds it so the two agree bit for bit.
    pub fn gain(&self) -> f64 {
        self.k_prime() * (self.d_eff() / self.big_d)
    }

    /// Field-name-carrying validation, run before any computation.
    pub fn validate(&self) -> Result<(), String> {
        let positive = [
            ("d", self.d),
            ("D", self.big_d),
            ("lambda", self.lambda),
            ("sigma", self.sigma),
            ("a2", self.a2),
            ("tol", self.tol),
            ("m", self.m),
            ("delta_t", self.delta_t),
        ];
        for (name, value) in positive {
            if !(value > 0.0) {
                return Err(format!("{name}: must be positive, got {value}"));
            }
        }
        let finite = [
            ("a11", self.a11),
            ("a12", self.a12),
            ("a13", self.a13),
            ("a22", self.a22),
            ("a23", self.a23),
            ("a33", self.a33),
            ("z_center", self.z_center),
            ("x0", self.x0),
            ("x0_x", self.x0_x),
            ("x0_y", self.x0_y),
            ("x0_z", self.x0_z),
            ("v0_x", self.v0_x),
            ("v0_y", self.v0_y),
            ("v0_z", self.v0_z),
            ("a", self.a),
            ("pulse_t", self.pulse_t),
            ("profile_min", self.profile_min),
            ("profile_max", self.profile_max),
        ];
        for (name, value) in finite {
            if !value.is_finite() {
                return Err(format!("{name}: must be finite, got {value}"));
            }
        }
        if let Some(w) = self.omega {
            if !(w >= 0.0) || !w.is_finite() {
                return Err(format!("omega: must be nonnegative, got {w}"));
            }
        }
        if let Some(y0) = self.y0 {
            if !y0.is_finite() {
                return Err(format!("y0: must be finite, got {y0}"));
            }
        }
        if let Some(t_end) = self.t_end {
            if !(t_end >= 0.0) || !t_end.is_finite() {
                return Err(format!("t_end: must be nonnegative, got {t_end}"));
            }
        }
        if let Some(dt) = self.dt {
            if !(dt > 0.0) || !dt.is_finite() {
                return Err(format!("dt: must be positive, got {dt}"));
            }
        }
        if let Some(v) = self.v {
            if !v.is_finite() {
                return Err(format!("v: must be finite, got {v}"));
            }
        }
        if self.profile_n < 2 {
            return Err(format!(
                "profile_n: need at least 2 samples, got {}",
                self.profile_n
            ));
        }
        if !(self.profile_min < self.profile_max) {
            return Err(format!(
                "profile_min: must be below profile_max ({} vs {})",
                self.profile_min, self.profile_max
            ));
        }
        if self.max_iter == 0 {
            return Err("max_iter: must be at least 1".to_string());
        }
        Ok(())
    }

    /// Applies one `key = value` assignment (from a config file or a
    /// flag). Unknown keys and malformed values are reported with the key
    /// name.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num(key: &str, value: &str) -> Result<f64, String> {
            value
                .parse::<f64>()
                .map_err(|_| format!("{key}: not a number: {value:?}"))
        }
        fn int(key: &str, value: &str) -> Result<usize, String> {
            value
                .parse::<usize>()
                .map_err(|_| format!("{key}: not a nonnegative integer: {value:?}"))
        }
        fn flag(key: &str, value: &str) -> Result<bool, String> {
            match value {
                "true" | "1" | "yes" => Ok(true),
                "false" | "0" | "no" => Ok(false),
                _ => Err(format!("{key}: not a boolean: {value:?}")),
            }
        }
        match key {
            "d" => self.d = num(key, value)?,
            "D" => self.big_d = num(key, value)?,
            "lambda" => self.lambda = num(key, value)?,
            "a11" => self.a11 = num(key, value)?,
            "a12" => self.a12 = num(key, value)?,
            "a13" => self.a13 = num(key, value)?,
            "a22" => self.a22 = num(key, value)?,
            "a23" => self.a23 = num(key, value)?,
            "a33" => self.a33 = num(key, value)?,
            "sigma" => self.sigma = num(key, value)?,
            "omega" => self.omega = Some(num(key, value)?),
            "z_center" => self.z_center = num(key, value)?,
            "a2" => self.a2 = num(key, value)?,
            "x0" => self.x0 = num(key, value)?,
            "n_iterates" => self.n_iterates = int(key, value)?,
            "cobweb_steps" => self.cobweb_steps = int(key, value)?,
            "tol" => self.tol = num(key, value)?,
            "max_iter" => self.max_iter = int(key, value)?,
            "literal_table_d" => self.literal_table_d = flag(key, value)?,
            "profile_min" => self.profile_min = num(key, value)?,
            "profile_max" => self.profile_max = num(key, value)?,
            "profile_n" => self.profile_n = int(key, value)?,
            "y0" => self.y0 = Some(num(key, value)?),
            "x0_x" => self.x0_x = num(key, value)?,
            "x0_y" => self.x0_y = num(key, value)?,
            "x0_z" => self.x0_z = num(key, value)?,
            "v0_x" => self.v0_x = num(key, value)?,
            "v0_y" => self.v0_y = num(key, value)?,
            "v0_z" => self.v0_z = num(key, value)?,
            "t_end" => self.t_end = Some(num(key, value)?),
            "dt" => self.dt = Some(num(key, value)?),
            "a" => self.a = num(key, value)?,
            "m" => self.m = num(key, value)?,
            "delta_t" => self.delta_t = num(key, value)?,
            "v" => self.v = Some(num(key, value)?),
            "pulse_t" => self.pulse_t = num(key, value)?,
            "convention" => {
                self.convention = match value {
                    "standard" => KernelConvention::Standard,
                    "paper" => KernelConvention::Paper,
                    _ => {
                        return Err(format!(
                            "convention: expected standard|paper, got {value:?}"
                        ))
                    }
                }
            }
            "out" => self.out = PathBuf::from(value),
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    /// Loads `key = value` lines over the current values. `#` starts a
    /// comment; blank lines are skipped; parse errors carry the line
    /// number.
    pub fn load_file(&mut self, path: &Path) -> Result<(), String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        for (idx, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("{}:{}: expected key = value", path.display(), idx + 1))?;
            self.set(key.trim(), value.trim())
                .map_err(|e| format!("{}:{}: {e}", path.display(), idx + 1))?;
        }
        Ok(())
    }

    /// Effective configuration as ordered key/value pairs (what
    /// --show-config prints).
    pub fn describe(&self) -> BTreeMap<&'static str, String> {
        let sci = crate::output::fmt_sci;
        let mut map = BTreeMap::new();
        map.insert("mode", self.mode.name().to_string());
        map.insert("d", sci(self.d_eff()));
        map.insert("D", sci(self.big_d));
        map.insert("lambda", sci(self.lambda));
        map.insert("k_prime", sci(self.k_prime()));
        map.insert("a11", sci(self.a11));
        map.insert("a12", sci(self.a12));
        map.insert("a13", sci(self.a13));
        map.insert("a22", sci(self.a22));
        map.insert("a23", sci(self.a23));
        map.insert("a33", sci(self.a33));
        map.insert("sigma", sci(self.sigma));
        map.insert(
            "omega",
            match self.mode {
                Mode::Pulse => sci(self.pulse_omega()),
                _ => sci(self.omega_eff()),
            },
        );
        map.insert("z_center", sci(self.z_center));
        map.insert("a2", sci(self.a2));
        map.insert("x0", sci(self.x0));
        map.insert("n_iterates", self.n_iterates.to_string());
        map.insert("cobweb_steps", self.cobweb_steps.to_string());
        map.insert("tol", sci(self.tol));
        map.insert("max_iter", self.max_iter.to_string());
        map.insert("literal_table_d", self.literal_table_d.to_string());
        map.insert("gain", sci(self.gain()));
        map.insert("profile_min", sci(self.profile_min));
        map.insert("profile_max", sci(self.profile_max));
        map.insert("profile_n", self.profile_n.to_string());
        map.insert("y0", sci(self.y0_eff()));
        map.insert("x0_x", sci(self.x0_x));
        map.insert("x0_y", sci(self.x0_y));
        map.insert("x0_z", sci(self.x0_z));
        map.insert("v0_x", sci(self.v0_x));
        map.insert("v0_y", sci(self.v0_y));
        map.insert("v0_z", sci(self.v0_z));
        map.insert("t_end", sci(self.t_end_eff()));
        map.insert("dt", sci(self.dt_eff()));
        map.insert("a", sci(self.a));
        map.insert("m", sci(self.m));
        map.insert("delta_t", sci(self.delta_t));
        map.insert("v", sci(self.v_eff()));
        map.insert("pulse_t", sci(self.pulse_t));
        map.insert(
            "convention",
            match self.convention {
                KernelConvention::Standard => "standard".to_string(),
                KernelConvention::Paper => "paper".to_string(),
            },
        );
        map.insert("out", self.out.display().to_string());
        map
    }
}
