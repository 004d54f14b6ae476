use super::Schedule;
use crate::error::{Result, SinrError};
use crate::instance::Instance;
use crate::sinr::is_p_signal;

/// A schedule refined to a stronger signal level.
#[derive(Debug, Clone, PartialEq)]
pub struct Strengthened {
    pub schedule: Schedule,
    /// Number of sub-slots each input slot was split into.
    pub blowup: Vec<usize>,
}

/// Splits every slot into `p_target`-signal sub-slots by first-fit in slot
/// order.
pub fn strengthen_schedule(inst: &Instance, sched: &Schedule, p_target: f64) -> Result<Strengthened> {
    if !(p_target >= sched.p_certified) {
        return Err(SinrError::Precondition(format!(
            "target level {p_target} is below the certified level {}",
            sched.p_certified
        )));
    }
    let mut slots = Vec::new();
    let mut blowup = Vec::with_capacity(sched.slots.len());
    for slot in &sched.slots {
        let mut subs: Vec<Vec<usize>> = Vec::new();
        for &v in slot {
            let mut placed = false;
            for sub in subs.iter_mut() {
                sub.push(v);
                if is_p_signal(inst, &sched.power, sub, p_target)? {
                    placed = true;
                    break;
                }
                sub.pop();
            }
            if !placed {
                if !is_p_signal(inst, &sched.power, &[v], p_target)? {
                    return Err(SinrError::Internal(format!(
                        "link {} alone is not a {p_target}-signal set",
                        inst.links[v].id
                    )));
                }
                subs.push(vec![v]);
            }
        }
        blowup.push(subs.len());
        slots.extend(subs);
    }
    let schedule = Schedule { slots, power: sched.power, mode: sched.mode, p_certified: p_target };
    schedule.verify(inst)?;
    Ok(Strengthened { schedule, blowup })
}
