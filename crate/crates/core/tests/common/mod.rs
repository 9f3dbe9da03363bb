#![allow(dead_code)]

use househunt::{NestId, RecruitCall};

/// Walks every permutation of the callers and every partner draw, giving
/// each ant's probabilities of ending as (recruited, untouched, recruiter)
/// and of each nest being handed back.
pub struct PairingOracle {
    pub indicator: Vec<[f64; 3]>,
    pub returned: Vec<Vec<(NestId, f64)>>,
}

pub fn pairing_oracle(calls: &[RecruitCall]) -> PairingOracle {
    let m = calls.len();
    let mut indicator = vec![[0.0; 3]; m];
    let mut returned: Vec<Vec<(NestId, f64)>> = vec![Vec::new(); m];
    let mut perms = Vec::new();
    permutations(&mut (0..m).collect(), 0, &mut perms);
    let p_perm = 1.0 / perms.len() as f64;
    for perm in &perms {
        let mut partner = vec![None; m];
        let mut busy = vec![false; m];
        walk(calls, perm, 0, &mut busy, &mut partner, p_perm, &mut |partner, p| {
            for i in 0..m {
                let (slot, nest) = match (partner[i], recruited_by(partner, i)) {
                    (Some(j), _) if j != i => (2, calls[i].target),
                    (_, Some(r)) => (0, calls[r].target),
                    _ => (1, calls[i].target),
                };
                indicator[i][slot] += p;
                match returned[i].iter_mut().find(|(n, _)| *n == nest) {
                    Some(e) => e.1 += p,
                    None => returned[i].push((nest, p)),
                }
            }
        });
    }
    PairingOracle { indicator, returned }
}

fn recruited_by(partner: &[Option<usize>], i: usize) -> Option<usize> {
    (0..partner.len()).find(|&r| r != i && partner[r] == Some(i))
}

fn permutations(v: &mut Vec<usize>, at: usize, out: &mut Vec<Vec<usize>>) {
    if at == v.len() {
        out.push(v.clone());
        return;
    }
    for i in at..v.len() {
        v.swap(at, i);
        permutations(v, at + 1, out);
        v.swap(at, i);
    }
}

fn walk(
    calls: &[RecruitCall],
    perm: &[usize],
    step: usize,
    busy: &mut Vec<bool>,
    partner: &mut Vec<Option<usize>>,
    p: f64,
    leaf: &mut dyn FnMut(&[Option<usize>], f64),
) {
    if step == perm.len() {
        leaf(partner, p);
        return;
    }
    let a = perm[step];
    if !calls[a].active || busy[a] {
        return walk(calls, perm, step + 1, busy, partner, p, leaf);
    }
    let m = calls.len();
    for b in 0..m {
        let q = p / m as f64;
        if b == a || !busy[b] {
            busy[a] = true;
            busy[b] = true;
            partner[a] = Some(b);
            walk(calls, perm, step + 1, busy, partner, q, leaf);
            partner[a] = None;
            busy[a] = false;
            if b != a {
                busy[b] = false;
            }
        } else {
            walk(calls, perm, step + 1, busy, partner, q, leaf);
        }
    }
}

/// Every caller set of size `1..=max` over active flags and target
/// assignments, with targets canonically numbered by first use.
pub fn small_configurations(max: usize) -> Vec<Vec<RecruitCall>> {
    let mut out = Vec::new();
    for m in 1..=max {
        for flags in 0..1u32 << m {
            for targets in restricted_growth(m) {
                out.push(
                    (0..m)
                        .map(|i| RecruitCall::new(i, flags >> i & 1 == 1, NestId(targets[i] + 1)))
                        .collect(),
                );
            }
        }
    }
    out
}

fn restricted_growth(m: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32]];
    for _ in 1..m {
        out = out
            .into_iter()
            .flat_map(|v| {
                let top = *v.iter().max().unwrap();
                (0..=top + 1).map(move |t| {
                    let mut w = v.clone();
                    w.push(t);
                    w
                })
            })
            .collect();
    }
    out
}
