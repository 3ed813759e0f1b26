//! Exogenous parameters, derived constants and the leverage algebra shared
//! by the open and monetary economies.
//!
//! Rates that enter the model as factors (the safe rate and money growth)
//! are stored gross. Scenario files and the [`Param`] accessors use net
//! values and convert at the boundary.

use std::fmt;
use std::str::FromStr;

use crate::error::{ModelError, Result};

/// Which economy a computation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Economy {
    /// Small open economy with an exogenous safe rate.
    Open,
    /// Closed economy with fiat money and an endogenous safe rate.
    Monetary,
}

impl Economy {
    pub fn as_str(self) -> &'static str {
        match self {
            Economy::Open => "open",
            Economy::Monetary => "monetary",
        }
    }
}

impl fmt::Display for Economy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Economy {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "open" => Ok(Economy::Open),
            "monetary" => Ok(Economy::Monetary),
            other => Err(ModelError::InvalidArgument(format!(
                "unknown economy `{other}` (expected open or monetary)"
            ))),
        }
    }
}

/// Saving behaviour of the young.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SavingMode {
    /// Consume only when old; the whole wage is saved.
    #[default]
    LinearOldOnly,
    /// Log utility over both periods; saving rate β/(1+β).
    LogUtility,
}

impl SavingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SavingMode::LinearOldOnly => "linear_old_only",
            SavingMode::LogUtility => "log_utility",
        }
    }
}

impl FromStr for SavingMode {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear_old_only" => Ok(SavingMode::LinearOldOnly),
            "log_utility" => Ok(SavingMode::LogUtility),
            other => Err(ModelError::InvalidArgument(format!(
                "unknown saving_mode `{other}` (expected linear_old_only or log_utility)"
            ))),
        }
    }
}

/// All exogenous parameters of a scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioParams {
    /// Pledgeable fraction of capital returns.
    pub theta: f64,
    /// Pledgeable fraction of land returns.
    pub theta_x: f64,
    /// Gross safe rate 1+r (open economy).
    pub gross_r: Option<f64>,
    /// Gross money growth 1+μ (monetary economy).
    pub gross_mu: Option<f64>,
    /// Entrepreneur share of each young cohort.
    pub eta: f64,
    /// Capital share.
    pub alpha: f64,
    /// Labor-productivity coefficient, χ(K) = aK.
    pub a: f64,
    pub delta: f64,
    /// Land productivity relative to labor productivity.
    pub epsilon: f64,
    pub beta: Option<f64>,
    pub rho: Option<f64>,
    /// Net growth rate of land rents under imperfect spillovers.
    pub d: Option<f64>,
    /// Worker endowment coefficient, e_t = e·aK_t.
    pub e: Option<f64>,
    pub saving_mode: SavingMode,
}

impl ScenarioParams {
    /// Open-economy parameter set used for the θˣ / r sign maps:
    /// θˣ = 0.6, θ = 0.5, r = 0.55, η = 0.4, α = 0.33, a = 15, δ = 0.2, ε = 0.
    pub fn open_baseline() -> Self {
        ScenarioParams {
            theta: 0.5,
            theta_x: 0.6,
            gross_r: Some(1.55),
            gross_mu: None,
            eta: 0.4,
            alpha: 0.33,
            a: 15.0,
            delta: 0.2,
            epsilon: 0.0,
            beta: None,
            rho: None,
            d: None,
            e: None,
            saving_mode: SavingMode::LinearOldOnly,
        }
    }

    /// Monetary-economy parameter set:
    /// θˣ = 0.6, θ = 0.2, μ = 0.5, η = 0.4, α = 0.33, a = 15, δ = 0.9, ε = 0.
    pub fn monetary_baseline() -> Self {
        ScenarioParams {
            theta: 0.2,
            theta_x: 0.6,
            gross_r: None,
            gross_mu: Some(1.5),
            eta: 0.4,
            alpha: 0.33,
            a: 15.0,
            delta: 0.9,
            epsilon: 0.0,
            beta: None,
            rho: None,
            d: None,
            e: None,
            saving_mode: SavingMode::LinearOldOnly,
        }
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Self {
        ScenarioParams {
            epsilon,
            ..self.clone()
        }
    }

    pub fn with(&self, param: Param, value: f64) -> Self {
        let mut p = self.clone();
        param.set(&mut p, value);
        p
    }

    pub fn gross_r(&self) -> Result<f64> {
        self.gross_r.ok_or(ModelError::MissingParameter("r"))
    }

    pub fn gross_mu(&self) -> Result<f64> {
        self.gross_mu.ok_or(ModelError::MissingParameter("mu"))
    }

    /// Whether the scenario carries the rate needed by `economy`.
    pub fn supports(&self, economy: Economy) -> bool {
        match economy {
            Economy::Open => self.gross_r.is_some(),
            Economy::Monetary => self.gross_mu.is_some(),
        }
    }

    /// Checks finiteness and the ranges of every field.
    pub fn validate(&self) -> Result<()> {
        fn check(ok: bool, what: &str) -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(ModelError::domain(what.to_string()))
            }
        }
        let unit = |x: f64| x.is_finite() && (0.0..=1.0).contains(&x);
        let open_unit = |x: f64| x.is_finite() && x > 0.0 && x < 1.0;

        check(unit(self.theta), "theta must lie in [0, 1]")?;
        check(unit(self.theta_x), "theta_x must lie in [0, 1]")?;
        if let Some(r) = self.gross_r {
            check(r.is_finite() && r > 0.0, "r must be finite and > -1")?;
        }
        if let Some(m) = self.gross_mu {
            check(m.is_finite() && m >= 1.0, "mu must be finite and >= 0")?;
        }
        check(open_unit(self.eta), "eta must lie in (0, 1)")?;
        check(open_unit(self.alpha), "alpha must lie in (0, 1)")?;
        check(
            self.a.is_finite() && self.a > 0.0,
            "a must be finite and > 0",
        )?;
        check(unit(self.delta), "delta must lie in [0, 1]")?;
        check(
            self.epsilon.is_finite() && self.epsilon >= 0.0,
            "epsilon must be finite and >= 0",
        )?;
        if let Some(b) = self.beta {
            check(b.is_finite() && b > 0.0, "beta must be finite and > 0")?;
        }
        if let Some(rho) = self.rho {
            check(open_unit(rho), "rho must lie in (0, 1)")?;
        }
        if let Some(d) = self.d {
            check(d.is_finite() && d >= 0.0, "d must be finite and >= 0")?;
        }
        if let Some(e) = self.e {
            check(e.is_finite() && e >= 0.0, "e must be finite and >= 0")?;
        }
        Ok(())
    }

    /// A ≡ a^(1−α).
    pub fn productivity(&self) -> f64 {
        self.a.powf(1.0 - self.alpha)
    }

    /// Rᶜ = αA + 1 − δ.
    pub fn capital_return(&self) -> f64 {
        self.alpha * self.productivity() + 1.0 - self.delta
    }

    /// Land rent relative to productive-sector output, ε·a^α.
    pub fn dividend_ratio(&self) -> f64 {
        self.epsilon * self.a.powf(self.alpha)
    }
}

/// Parameters that comparative statics can perturb.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    Theta,
    ThetaX,
    /// Net safe rate r.
    R,
    /// Net money growth μ.
    Mu,
    Epsilon,
}

impl Param {
    pub const ALL: [Param; 5] = [
        Param::Theta,
        Param::ThetaX,
        Param::R,
        Param::Mu,
        Param::Epsilon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::Theta => "theta",
            Param::ThetaX => "theta_x",
            Param::R => "r",
            Param::Mu => "mu",
            Param::Epsilon => "epsilon",
        }
    }

    /// Net value of the parameter; NaN when the rate is not set.
    pub fn get(self, p: &ScenarioParams) -> f64 {
        match self {
            Param::Theta => p.theta,
            Param::ThetaX => p.theta_x,
            Param::R => p.gross_r.map_or(f64::NAN, |g| g - 1.0),
            Param::Mu => p.gross_mu.map_or(f64::NAN, |g| g - 1.0),
            Param::Epsilon => p.epsilon,
        }
    }

    pub fn set(self, p: &mut ScenarioParams, value: f64) {
        match self {
            Param::Theta => p.theta = value,
            Param::ThetaX => p.theta_x = value,
            Param::R => p.gross_r = Some(1.0 + value),
            Param::Mu => p.gross_mu = Some(1.0 + value),
            Param::Epsilon => p.epsilon = value,
        }
    }

    /// Whether perturbing this parameter is meaningful in `economy`.
    pub fn applies_to(self, economy: Economy) -> bool {
        !matches!(
            (self, economy),
            (Param::R, Economy::Monetary) | (Param::Mu, Economy::Open)
        )
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        Param::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| ModelError::InvalidArgument(format!("unknown parameter `{s}`")))
    }
}

/// Leveraged returns at a given gross safe rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeveragedReturns {
    /// λ, the leveraged return on capital.
    pub lambda: f64,
    /// Unleveraged land return that equalises leveraged returns.
    pub rx: f64,
    /// 1/(1 − θRᶜ/(1+r)).
    pub capital_leverage: f64,
    /// 1 − θˣRˣ/(1+r), own funds per unit of land.
    pub land_downpayment: f64,
}

impl LeveragedReturns {
    pub fn at(rc: f64, theta: f64, theta_x: f64, gross_r: f64) -> Result<Self> {
        let denom = 1.0 - theta * rc / gross_r;
        if denom <= 0.0 || !denom.is_finite() {
            return Err(ModelError::domain(format!(
                "capital leverage undefined: 1+r = {gross_r} <= θRᶜ = {}",
                theta * rc
            )));
        }
        let capital_leverage = 1.0 / denom;
        let lambda = rc * (1.0 - theta) * capital_leverage;
        let rx = lambda / (1.0 - theta_x + theta_x * lambda / gross_r);
        let land_downpayment = 1.0 - theta_x * rx / gross_r;
        Ok(LeveragedReturns {
            lambda,
            rx,
            capital_leverage,
            land_downpayment,
        })
    }
}

/// Closed-form constants of a scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants {
    /// A ≡ a^(1−α).
    pub productivity: f64,
    /// Rental rate αA.
    pub rental: f64,
    /// Gross capital return Rᶜ.
    pub capital_return: f64,
    pub a_pow_alpha: f64,
    /// Present in open mode only; the monetary economy recomputes these at r*.
    pub leveraged: Option<LeveragedReturns>,
}

impl DerivedConstants {
    pub fn lambda(&self) -> Option<f64> {
        self.leveraged.map(|l| l.lambda)
    }

    pub fn rx_star(&self) -> Option<f64> {
        self.leveraged.map(|l| l.rx)
    }

    pub fn capital_leverage(&self) -> Option<f64> {
        self.leveraged.map(|l| l.capital_leverage)
    }

    pub fn land_downpayment(&self) -> Option<f64> {
        self.leveraged.map(|l| l.land_downpayment)
    }
}

pub fn derive_constants(params: &ScenarioParams, economy: Economy) -> Result<DerivedConstants> {
    params.validate()?;
    let productivity = params.productivity();
    let rental = params.alpha * productivity;
    let capital_return = rental + 1.0 - params.delta;
    let leveraged = match economy {
        Economy::Open => Some(LeveragedReturns::at(
            capital_return,
            params.theta,
            params.theta_x,
            params.gross_r()?,
        )?),
        Economy::Monetary => None,
    };
    Ok(DerivedConstants {
        productivity,
        rental,
        capital_return,
        a_pow_alpha: params.a.powf(params.alpha),
        leveraged,
    })
}
