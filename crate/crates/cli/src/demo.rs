//! The two built-in experiments on the two-coin state.

use num_traits::{Signed, Zero};
use pcoherence::coherence::{classical_oracle_prevision, updated_lower_prevision, AssessmentSet};
use pcoherence::grid::{simplex_grid, step_divisions};
use pcoherence::moment::{
    bell_gamble, bell_state, classical_two_atom_mixture, heads_left, heads_right,
};
use pcoherence::polynomial::{rat, to_f64};
use pcoherence::{Error, MultiIndex, Polynomial, Rational, Result};
use serde_json::{json, Value};

use crate::fmt_rat;

pub fn check_epsilon(epsilon: &Rational) -> Result<()> {
    if !epsilon.is_positive() || *epsilon >= rat(1, 6) {
        return Err(Error::InvalidArgument(format!(
            "epsilon {} must lie strictly between 0 and 1/6",
            fmt_rat(epsilon)
        )));
    }
    Ok(())
}

pub struct BellReport {
    pub epsilon: Rational,
    pub grid_step: Rational,
    pub grid_max: Rational,
    pub grid_argmax: Vec<Rational>,
    pub state_valid: bool,
    pub expectation: Rational,
    pub oracle_lower: Rational,
    pub oracle_upper: Rational,
}

pub fn demo_bell(epsilon: &Rational, grid_step: &Rational) -> Result<BellReport> {
    check_epsilon(epsilon)?;
    let k = step_divisions(grid_step).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "grid step {} is not 1/k with k >= 2",
            fmt_rat(grid_step)
        ))
    })?;
    let q = bell_gamble(epsilon);
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    for p in simplex_grid(3, k) {
        let v = q.eval(&p)?;
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, p));
        }
    }
    let (grid_max, grid_argmax) = best.expect("grid is never empty");
    let state = bell_state();
    let empty = AssessmentSet::empty(3);
    let oracle_lower = classical_oracle_prevision(&q, &empty, grid_step)?.value;
    let oracle_upper = -classical_oracle_prevision(&-&q, &empty, grid_step)?.value;
    Ok(BellReport {
        epsilon: epsilon.clone(),
        grid_step: grid_step.clone(),
        grid_max,
        grid_argmax,
        state_valid: state.is_valid(),
        expectation: state.expectation(&q)?,
        oracle_lower,
        oracle_upper,
    })
}

impl BellReport {
    pub fn summary(&self) -> String {
        let point: Vec<String> = self.grid_argmax.iter().map(fmt_rat).collect();
        let neg_eps = -&self.epsilon;
        format!(
            "Bell gamble with epsilon = {eps}\n\
             grid maximum (step {step}): {gmax} at ({point}), <= -epsilon: {gok}\n\
             Bell state valid: {valid}\n\
             expectation under Bell state: {e} ({ef}), positive: {epos}\n\
             classical oracle lower/upper prevision: {ol} / {ou}, upper <= -epsilon: {ook}\n",
            eps = fmt_rat(&self.epsilon),
            step = fmt_rat(&self.grid_step),
            gmax = fmt_rat(&self.grid_max),
            point = point.join(", "),
            gok = self.grid_max <= neg_eps,
            valid = self.state_valid,
            e = fmt_rat(&self.expectation),
            ef = to_f64(&self.expectation),
            epos = self.expectation.is_positive(),
            ol = fmt_rat(&self.oracle_lower),
            ou = fmt_rat(&self.oracle_upper),
            ook = self.oracle_upper <= neg_eps,
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "epsilon": fmt_rat(&self.epsilon),
            "grid_step": fmt_rat(&self.grid_step),
            "grid_max": fmt_rat(&self.grid_max),
            "grid_argmax": self.grid_argmax.iter().map(fmt_rat).collect::<Vec<_>>(),
            "state_valid": self.state_valid,
            "expectation": fmt_rat(&self.expectation),
            "expectation_float": to_f64(&self.expectation),
            "oracle_lower": fmt_rat(&self.oracle_lower),
            "oracle_upper": fmt_rat(&self.oracle_upper),
        })
    }
}

pub struct SocksRow {
    pub label: &'static str,
    pub dual: Rational,
    pub primal: Option<Rational>,
}

pub struct SocksReport {
    pub epsilon: Rational,
    pub rows: Vec<SocksRow>,
    pub bell_value: Rational,
    pub marginals: [Rational; 4],
    pub mixture_marginals: [Rational; 4],
    pub bell_z011: Rational,
    pub mixture_z011: Rational,
}

pub fn demo_socks(epsilon: &Rational) -> Result<SocksReport> {
    check_epsilon(epsilon)?;
    let state = bell_state();
    let bridge = state.to_assessment_set();
    let one = Polynomial::one(3);
    let hr = heads_right();
    let hl = heads_left();
    let tr = &one - &hr;
    let tl = &one - &hl;
    let cases = [
        ("P(Hr | Hl)", &hr, &hl),
        ("P(Tr | Hl)", &tr, &hl),
        ("P(Hr | Tl)", &hr, &tl),
        ("P(Tr | Tl)", &tr, &tl),
    ];
    let mut rows = Vec::new();
    for (label, q, pi) in cases {
        let dual = state.conditional_value(q, pi)?;
        let primal = updated_lower_prevision(q, pi, &bridge, state.degree())?
            .value()
            .cloned();
        rows.push(SocksRow {
            label,
            dual,
            primal,
        });
    }
    let mixture = classical_two_atom_mixture().moments(2)?;
    let z011 = MultiIndex(vec![0, 1, 1]);
    Ok(SocksReport {
        epsilon: epsilon.clone(),
        rows,
        bell_value: state.expectation(&bell_gamble(epsilon))?,
        marginals: state.marginal_moments()?,
        mixture_marginals: mixture.marginal_moments()?,
        bell_z011: state.moment(&z011).cloned().unwrap_or_else(Rational::zero),
        mixture_z011: mixture
            .moment(&z011)
            .cloned()
            .unwrap_or_else(Rational::zero),
    })
}

const MARGINAL_NAMES: [&str; 4] = ["E[Hr]", "E[Hl]", "E[Hr^2]", "E[Hl^2]"];

impl SocksReport {
    pub fn summary(&self) -> String {
        let mut out = String::from("conditional previsions under the Bell state\n");
        out.push_str("case        dual  primal\n");
        for r in &self.rows {
            let primal = r.primal.as_ref().map_or("vacuous".to_string(), fmt_rat);
            out.push_str(&format!(
                "{:<10}  {:<4}  {}\n",
                r.label,
                fmt_rat(&r.dual),
                primal
            ));
        }
        out.push_str(&format!(
            "Bell value 1/6 - epsilon (epsilon = {}): {}\n",
            fmt_rat(&self.epsilon),
            fmt_rat(&self.bell_value)
        ));
        out.push_str("marginal    Bell  mixture_float\n");
        for (name, (b, m)) in MARGINAL_NAMES
            .iter()
            .zip(self.marginals.iter().zip(&self.mixture_marginals))
        {
            out.push_str(&format!(
                "{name:<10}  {:<4}  {:.6}\n",
                fmt_rat(b),
                to_f64(m)
            ));
        }
        out.push_str(&format!(
            "z011: mixture {} vs Bell {}\n",
            fmt_rat(&self.mixture_z011),
            fmt_rat(&self.bell_z011)
        ));
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "case": r.label,
                    "dual": fmt_rat(&r.dual),
                    "primal": r.primal.as_ref().map(fmt_rat),
                })
            })
            .collect();
        json!({
            "epsilon": fmt_rat(&self.epsilon),
            "conditional": rows,
            "bell_value": fmt_rat(&self.bell_value),
            "marginals": self.marginals.iter().map(fmt_rat).collect::<Vec<_>>(),
            "mixture_marginals": self.mixture_marginals.iter().map(fmt_rat).collect::<Vec<_>>(),
            "mixture_marginals_float": self.mixture_marginals.iter().map(to_f64).collect::<Vec<_>>(),
            "z011": { "bell": fmt_rat(&self.bell_z011), "mixture": fmt_rat(&self.mixture_z011) },
        })
    }
}
