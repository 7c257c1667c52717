use super::elements::{ElementKind, ScoreElement, Time};
use super::part::Part;
use super::ScoreError;

/// Piecewise-linear map from timeline divisions to quarter-note offsets.
///
/// Each segment starts at a `Divisions` element; within a segment with
/// value `d` beginning at `t0` after `q0` accumulated quarters, position
/// `t` maps to `q0 + (t - t0) / d`. The map is monotonically
/// non-decreasing and extends past the last segment indefinitely.
#[derive(Clone, Debug)]
pub struct QuarterMap {
    segments: Vec<QuarterSegment>,
}

#[derive(Clone, Copy, Debug)]
struct QuarterSegment {
    t0: Time,
    divisions: u32,
    q0: f64,
}

impl QuarterMap {
    pub(crate) fn from_part(part: &Part) -> Result<QuarterMap, ScoreError> {
        let segs = division_segments(part)?;
        let mut segments = Vec::with_capacity(segs.len());
        let mut q0 = 0.0;
        let mut prev: Option<(Time, u32)> = None;
        for (t, d) in segs {
            if let Some((pt, pd)) = prev {
                q0 += (t - pt) as f64 / pd as f64;
            }
            segments.push(QuarterSegment {
                t0: t,
                divisions: d,
                q0,
            });
            prev = Some((t, d));
        }
        Ok(QuarterMap { segments })
    }

    pub fn at(&self, t: Time) -> f64 {
        let seg = match self.segments.iter().rev().find(|s| s.t0 <= t) {
            Some(s) => s,
            None => &self.segments[0],
        };
        seg.q0 + (t - seg.t0) as f64 / seg.divisions as f64
    }
}

/// Like [`QuarterMap`] but measured in beats of the governing time
/// signature; beat counts accumulate across signature changes.
#[derive(Clone, Debug)]
pub struct BeatMap {
    segments: Vec<BeatSegment>,
}

#[derive(Clone, Copy, Debug)]
struct BeatSegment {
    t0: Time,
    /// Beats per division within this segment.
    rate: f64,
    b0: f64,
}

impl BeatMap {
    pub(crate) fn from_part(part: &Part) -> Result<BeatMap, ScoreError> {
        let divisions = division_segments(part)?;
        let mut signatures: Vec<(Time, u32)> = Vec::new();
        for r in part.iter_kind(ElementKind::TimeSignature, None, None) {
            if let ScoreElement::TimeSignature(ts) = r.element {
                signatures.push((r.span.start, ts.beat_type));
            }
        }
        if signatures.first().map(|(t, _)| *t) != Some(0) {
            return Err(ScoreError::NoTimeSignature);
        }
        signatures.dedup_by_key(|(t, _)| *t);

        // Break at every divisions or signature change.
        let mut boundaries: Vec<Time> = divisions
            .iter()
            .map(|(t, _)| *t)
            .chain(signatures.iter().map(|(t, _)| *t))
            .collect();
        boundaries.sort_unstable();
        boundaries.dedup();

        let current = |list: &[(Time, u32)], t: Time| -> u32 {
            list.iter()
                .rev()
                .find(|(start, _)| *start <= t)
                .map(|(_, v)| *v)
                .expect("first entry at t=0")
        };

        let mut segments = Vec::with_capacity(boundaries.len());
        let mut b0 = 0.0;
        let mut prev: Option<(Time, f64)> = None;
        for t in boundaries {
            if let Some((pt, rate)) = prev {
                b0 += (t - pt) as f64 * rate;
            }
            let d = current(&divisions, t);
            let beat_type = current(&signatures, t);
            // One beat is 4/beat_type quarters, i.e. d * 4/beat_type divisions.
            let rate = beat_type as f64 / (4.0 * d as f64);
            segments.push(BeatSegment { t0: t, rate, b0 });
            prev = Some((t, rate));
        }
        Ok(BeatMap { segments })
    }

    pub fn at(&self, t: Time) -> f64 {
        let seg = match self.segments.iter().rev().find(|s| s.t0 <= t) {
            Some(s) => s,
            None => &self.segments[0],
        };
        seg.b0 + (t - seg.t0) as f64 * seg.rate
    }
}

/// The part's `Divisions` elements as (start, value) pairs in timeline
/// order. Errors when none exist or the first sits after t=0.
pub(crate) fn division_segments(part: &Part) -> Result<Vec<(Time, u32)>, ScoreError> {
    let mut segs: Vec<(Time, u32)> = Vec::new();
    for r in part.iter_kind(ElementKind::Divisions, None, None) {
        if let ScoreElement::Divisions(d) = r.element {
            segs.push((r.span.start, d.value));
        }
    }
    match segs.first() {
        None => Err(ScoreError::NoDivisions),
        Some((t, _)) if *t != 0 => Err(ScoreError::LateDivisions(*t)),
        Some(_) => {
            segs.dedup_by_key(|(t, _)| *t);
            Ok(segs)
        }
    }
}

/// Exact integer map from part divisions to a uniform target resolution.
///
/// `target` must be divisible by every divisions value of the part, which
/// holds by construction when it is their least common multiple.
#[derive(Clone, Debug)]
pub(crate) struct TickMap {
    segments: Vec<(Time, i64, i64)>, // (t0, pos0 in target units, target/divisions)
}

impl TickMap {
    pub fn new(segments: &[(Time, u32)], target: i64) -> Result<TickMap, ScoreError> {
        let mut out = Vec::with_capacity(segments.len());
        let mut pos0: i64 = 0;
        let mut prev: Option<(Time, i64)> = None;
        for (t, d) in segments {
            if target % *d as i64 != 0 {
                return Err(ScoreError::DivisionOverflow);
            }
            let mult = target / *d as i64;
            if let Some((pt, pmult)) = prev {
                pos0 = pos0
                    .checked_add(
                        (t - pt)
                            .checked_mul(pmult)
                            .ok_or(ScoreError::DivisionOverflow)?,
                    )
                    .ok_or(ScoreError::DivisionOverflow)?;
            }
            out.push((*t, pos0, mult));
            prev = Some((*t, mult));
        }
        Ok(TickMap { segments: out })
    }

    pub fn at(&self, t: Time) -> i64 {
        let (t0, pos0, mult) = match self.segments.iter().rev().find(|(t0, _, _)| *t0 <= t) {
            Some(s) => *s,
            None => self.segments[0],
        };
        pos0 + (t - t0) * mult
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: i64, b: i64) -> Result<i64, ScoreError> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b))
        .checked_mul(b)
        .map(|v| v.abs())
        .ok_or(ScoreError::DivisionOverflow)
}

#[cfg(test)]
mod tests {
    use super::super::elements::{Divisions, Note, TimeSignature};
    use super::super::pitch::{Pitch, Step};
    use super::*;

    fn part_with(divs: &[(Time, u32)]) -> Part {
        let mut part = Part::new("P1");
        for (t, d) in divs {
            part.add(*t, *t, Divisions { value: *d }).unwrap();
        }
        part
    }

    #[test]
    fn quarter_map_single_segment() {
        let part = part_with(&[(0, 4)]);
        let qm = part.quarter_map().unwrap();
        assert_eq!(qm.at(0), 0.0);
        assert_eq!(qm.at(8), 2.0);
    }

    #[test]
    fn quarter_map_piecewise() {
        // Two divisions per quarter up to t=4, then four per quarter:
        // t=8 is 4/2 + 4/4 = 3 quarters.
        let part = part_with(&[(0, 2), (4, 4)]);
        let qm = part.quarter_map().unwrap();
        assert_eq!(qm.at(8), 3.0);
        assert_eq!(qm.at(4), 2.0);
        assert_eq!(qm.at(2), 1.0);
    }

    #[test]
    fn quarter_map_requires_divisions_at_zero() {
        let part = Part::new("P1");
        assert!(matches!(part.quarter_map(), Err(ScoreError::NoDivisions)));
        let mut late = Part::new("P1");
        late.add(2, 2, Divisions { value: 1 }).unwrap();
        assert!(matches!(
            late.quarter_map(),
            Err(ScoreError::LateDivisions(2))
        ));
    }

    #[test]
    fn beat_map_quarter_beats() {
        let mut part = part_with(&[(0, 1)]);
        part.add(0, 0, TimeSignature { beats: 4, beat_type: 4 })
            .unwrap();
        assert_eq!(part.beat_at(3).unwrap(), 3.0);
        assert_eq!(part.beat_at(0).unwrap(), 0.0);
    }

    #[test]
    fn beat_map_eighth_beats() {
        // 6/8 with two divisions per quarter: each division is one
        // eighth-note beat, so t=3 is beat 3.
        let mut part = part_with(&[(0, 2)]);
        part.add(0, 0, TimeSignature { beats: 6, beat_type: 8 })
            .unwrap();
        assert_eq!(part.beat_at(3).unwrap(), 3.0);
    }

    #[test]
    fn beat_map_accumulates_across_changes() {
        let mut part = part_with(&[(0, 2)]);
        part.add(0, 0, TimeSignature { beats: 4, beat_type: 4 })
            .unwrap();
        part.add(8, 8, TimeSignature { beats: 6, beat_type: 8 })
            .unwrap();
        // Four quarter beats in [0,8), then eighth beats.
        assert_eq!(part.beat_at(8).unwrap(), 4.0);
        assert_eq!(part.beat_at(11).unwrap(), 7.0);
    }

    #[test]
    fn beat_map_requires_signature() {
        let mut part = part_with(&[(0, 2)]);
        part.add(0, 4, Note::new(Pitch::spelled(Step::C, 0, 4)))
            .unwrap();
        assert!(matches!(part.beat_map(), Err(ScoreError::NoTimeSignature)));
    }

    #[test]
    fn tick_map_rescales_exactly() {
        let segs = vec![(0, 2), (4, 3)];
        let map = TickMap::new(&segs, 6).unwrap();
        assert_eq!(map.at(0), 0);
        assert_eq!(map.at(4), 12); // 2 quarters at 6 per quarter
        assert_eq!(map.at(7), 18); // one more quarter
    }

    #[test]
    fn lcm_basics() {
        assert_eq!(lcm(2, 3).unwrap(), 6);
        assert_eq!(lcm(4, 6).unwrap(), 12);
        assert_eq!(lcm(1, 1).unwrap(), 1);
    }
}
