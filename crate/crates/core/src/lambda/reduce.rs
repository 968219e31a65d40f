use thiserror::Error;

use super::LambdaTerm;
use crate::supply::NameSupply;

#[derive(Clone, Debug, Error)]
#[error("fuel exhausted after {steps} beta steps")]
pub struct FuelExhausted {
    pub steps: u64,
    pub partial: LambdaTerm,
}

/// Contract the leftmost-outermost redex, if any.
fn step(t: &LambdaTerm, fresh: &mut NameSupply) -> Option<LambdaTerm> {
    match t {
        LambdaTerm::Var(_) => None,
        LambdaTerm::Abs(x, body) => {
            step(body, fresh).map(|b| LambdaTerm::Abs(x.clone(), Box::new(b)))
        }
        LambdaTerm::App(f, a) => {
            if let LambdaTerm::Abs(x, body) = &**f {
                return Some(body.substitute(x, a, fresh));
            }
            if let Some(f2) = step(f, fresh) {
                return Some(LambdaTerm::App(Box::new(f2), a.clone()));
            }
            step(a, fresh).map(|a2| LambdaTerm::App(f.clone(), Box::new(a2)))
        }
    }
}

/// Normal-order beta reduction, one unit of fuel per beta step.
pub fn normalize_ref(t: &LambdaTerm, fuel: u64) -> Result<LambdaTerm, FuelExhausted> {
    let mut fresh = NameSupply::new().avoiding(t.all_names());
    let mut cur = t.clone();
    let mut steps = 0;
    loop {
        if cur.is_normal() {
            return Ok(cur);
        }
        if steps >= fuel {
            return Err(FuelExhausted { steps, partial: cur });
        }
        cur = step(&cur, &mut fresh).expect("non-normal term has a redex");
        steps += 1;
    }
}
