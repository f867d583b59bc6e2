//! The four worked examples (two seed expansions, one decomposition, one
//! composition) as frozen expectations, replayed by `verify --suite examples`
//! and the acceptance runner.

use crate::error::Result;
use crate::moves::{compose_traced, decompose_traced, Decomposition, MoveEvent};
use crate::partitions::{KrVariant, Partition};
use crate::seedgen::{expand_seed, to_seed};

pub const SEED_D_INPUT: &str = "3+5+8+11+13+19+21+23+25";
pub const SEED_D_OUTPUT: [&str; 8] = [
    "3+5+8+11+13+19+21+23+25",
    "4+4+8+11+13+19+21+23+25",
    "3+5+8+12+12+19+21+23+25",
    "4+4+8+12+12+19+21+23+25",
    "3+5+8+11+13+20+20+24+24",
    "4+4+8+11+13+20+20+24+24",
    "3+5+8+12+12+20+20+24+24",
    "4+4+8+12+12+20+20+24+24",
];

pub const SEED_DPRIME_INPUT: &str = "2+2+6+12+12+16+18+24+24";
pub const SEED_DPRIME_SEED: &str = "1+3+6+11+13+16+18+23+25";
pub const SEED_DPRIME_OUTPUT: [&str; 4] = [
    "2+2+6+11+13+16+18+23+25",
    "2+2+6+12+12+16+18+23+25",
    "2+2+6+11+13+16+18+24+24",
    "2+2+6+12+12+16+18+24+24",
];

pub const DECOMPOSE_INPUT: &str = "1,4,4,5,6,6,9,10,11,12,12,14";
pub const DECOMPOSE_BASE: &str = "[1,2],[3,4],4,[6,6],[7,8],8,10,12";
pub const DECOMPOSE_MU: &str = "3,3,6,6";
pub const DECOMPOSE_THETA: &str = "0,1,2,2";
pub const DECOMPOSE_STATES: [&str; 9] = [
    "1,2,3,5,6,6,9,10,11,12,12,14",
    "1,2,3,4,4,6,9,10,11,12,12,14",
    "1,2,3,4,4,6,8,8,11,12,12,14",
    "1,2,3,4,4,6,6,7,11,12,12,14",
    "1,2,3,4,4,6,6,7,10,10,12,14",
    "1,2,3,4,4,6,6,7,8,9,12,14",
    "1,2,3,4,4,6,6,7,8,8,12,14",
    "1,2,3,4,4,6,6,7,8,8,10,14",
    "1,2,3,4,4,6,6,7,8,8,10,12",
];

pub const COMPOSE_BASE: &str = "2,2,3,4,4,6,6,7,8,8,10,10,11,13,15";
pub const COMPOSE_MU: &str = "3,3,3,6,6";
pub const COMPOSE_THETA: &str = "0,0,2,3,5";
pub const COMPOSE_OUTPUT: &str = "2,4,4,5,6,6,8,8,9,12,12,14,14,16,20";
/// After the three singleton shifts, then after each forward move.
pub const COMPOSE_STATES: [&str; 8] = [
    "2,2,3,4,4,6,6,7,8,8,10,10,13,16,20",
    "2,2,3,4,4,6,6,7,8,8,11,12,13,16,20",
    "2,2,3,4,4,6,6,7,8,8,11,14,14,16,20",
    "2,2,3,4,4,6,6,7,9,10,11,14,14,16,20",
    "2,2,3,4,4,6,6,7,9,12,12,14,14,16,20",
    "2,2,3,4,4,6,8,8,9,12,12,14,14,16,20",
    "2,2,3,5,6,6,8,8,9,12,12,14,14,16,20",
    "2,4,4,5,6,6,8,8,9,12,12,14,14,16,20",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

fn parse(s: &str) -> Partition {
    s.parse().expect("frozen example parses")
}

fn sorted(list: &[&str]) -> Vec<Partition> {
    let mut v: Vec<Partition> = list.iter().map(|s| parse(s)).collect();
    v.sort();
    v
}

fn states(events: &[MoveEvent]) -> Vec<String> {
    events.iter().map(|e| e.state.parse::<Partition>().map(|p| p.to_string()).unwrap_or_default()).collect()
}

fn check(name: &'static str, ok: bool, detail: String) -> Check {
    Check { name, ok, detail }
}

pub fn seed_expansion_d() -> Result<Check> {
    let got = expand_seed(&parse(SEED_D_INPUT), KrVariant::D)?;
    let want = sorted(&SEED_D_OUTPUT);
    let weights = got.iter().all(|p| p.weight() == 128 && p.len() == 9);
    Ok(check("seed expansion (KR1, n = 128)", got == want && weights, format!("{} partitions", got.len())))
}

pub fn seed_expansion_dprime() -> Result<Check> {
    let seed = to_seed(&parse(SEED_DPRIME_INPUT), KrVariant::DPrime)?;
    let got = expand_seed(&seed, KrVariant::DPrime)?;
    let want = sorted(&SEED_DPRIME_OUTPUT);
    let weights = got.iter().all(|p| p.weight() == 116 && p.len() == 9);
    let ok = seed == parse(SEED_DPRIME_SEED) && got == want && weights;
    Ok(check("seed expansion (KR2, n = 116)", ok, format!("seed {}; {} partitions", seed.to_plus_string(), got.len())))
}

pub fn decomposition() -> Result<Check> {
    let input = parse(DECOMPOSE_INPUT);
    let (d, events) = decompose_traced(&input)?;
    let w = (d.base().parts().weight(), d.mu().weight(), d.theta().weight());
    let ok = d.base().to_string() == DECOMPOSE_BASE
        && d.mu().to_string() == DECOMPOSE_MU
        && d.theta().to_string() == DECOMPOSE_THETA
        && input.weight() == 94
        && w == (71, 18, 5)
        && states(&events) == DECOMPOSE_STATES;
    Ok(check("decomposition (n = 94)", ok, format!("{d}; {} = {} + {} + {}", input.weight(), w.0, w.1, w.2)))
}

pub fn composition() -> Result<Check> {
    let d = Decomposition::new(
        &parse(COMPOSE_BASE),
        &parse(COMPOSE_MU),
        &Partition::with_zeros(COMPOSE_THETA.split(',').map(|x| x.parse().unwrap()).collect())?,
    )?;
    let (lambda, events) = compose_traced(&d)?;
    let w = (d.base().parts().weight(), d.mu().weight(), d.theta().weight());
    let ok = lambda == parse(COMPOSE_OUTPUT) && lambda.weight() == 140 && w == (109, 21, 10) && states(&events[2..]) == COMPOSE_STATES;
    Ok(check("composition (n = 140)", ok, format!("{lambda}; {} = {} + {} + {}", lambda.weight(), w.0, w.1, w.2)))
}

pub fn all() -> Result<Vec<Check>> {
    Ok(vec![seed_expansion_d()?, seed_expansion_dprime()?, decomposition()?, composition()?])
}

#[cfg(test)]
mod tests {
    #[test]
    fn every_example_holds() {
        for c in super::all().unwrap() {
            assert!(c.ok, "{}: {}", c.name, c.detail);
        }
    }
}
