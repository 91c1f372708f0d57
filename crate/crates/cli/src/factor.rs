use ntangle::concurrence::{self, FactorCase, Factorization};
use ntangle::qstate::{QState, StateSpec};
use serde::Serialize;

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum FactorOutput {
    Product {
        product: bool,
        case: FactorCase,
        fidelity: f64,
        first: StateSpec,
        rest: StateSpec,
    },
    NotAProduct {
        product: bool,
        c: f64,
    },
}

pub fn factor(state: &QState, tol: f64) -> Result<FactorOutput, String> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(format!("--tol must be positive, got {tol}"));
    }
    let out = match concurrence::factor_one_rest(state, tol).map_err(|e| e.to_string())? {
        Factorization::Product {
            first,
            rest,
            case,
            fidelity,
        } => FactorOutput::Product {
            product: true,
            case,
            fidelity,
            first: StateSpec::dense(&first),
            rest: StateSpec::dense(&rest),
        },
        Factorization::NotAProduct { c } => FactorOutput::NotAProduct { product: false, c },
    };
    Ok(out)
}
