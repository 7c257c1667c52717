use std::collections::HashSet;
use std::fmt;

use super::elements::{ElementKind, ScoreElement, Time};
use super::group::PartGroup;
use super::part::Part;

/// One broken invariant, reported as data rather than an error so a whole
/// part can be checked in a single pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Short name of the invariant, e.g. `staff-range`.
    pub rule: &'static str,
    /// Description of the offending object.
    pub object: String,
    pub t: Option<Time>,
    pub message: String,
}

impl Violation {
    fn new(rule: &'static str, object: String, t: Option<Time>, message: String) -> Violation {
        Violation {
            rule,
            object,
            t,
            message,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.t {
            Some(t) => write!(f, "[{}] {} at t={}: {}", self.rule, self.object, t, self.message),
            None => write!(f, "[{}] {}: {}", self.rule, self.object, self.message),
        }
    }
}

pub(crate) fn validate_part(part: &Part) -> Vec<Violation> {
    let mut out = Vec::new();

    if part.id.is_empty() {
        out.push(Violation::new(
            "part-id",
            "part".into(),
            None,
            "part id must be non-empty".into(),
        ));
    }
    if part.staff_count < 1 {
        out.push(Violation::new(
            "staff-count",
            format!("part {}", part.id),
            None,
            "staff count must be at least 1".into(),
        ));
    }

    for r in part.elements() {
        let label = format!("{} {}", r.element.describe(), r.id);
        let t = Some(r.span.start);
        if r.span.duration() == 0 && !r.element.zero_duration_allowed() {
            out.push(Violation::new(
                "zero-duration",
                label.clone(),
                t,
                "element of this kind must have start < end".into(),
            ));
        }
        match r.element {
            ScoreElement::Note(n) => {
                if n.grace && r.span.duration() != 0 {
                    out.push(Violation::new(
                        "grace-duration",
                        label.clone(),
                        t,
                        "grace notes are point-registered with zero duration".into(),
                    ));
                }
                let midi = n.midi_pitch();
                if !(0..=127).contains(&midi) {
                    out.push(Violation::new(
                        "midi-range",
                        label.clone(),
                        t,
                        format!("derived midi pitch {midi} outside 0..=127"),
                    ));
                }
                if let Some(s) = n.pitch.spelling() {
                    if !(-2..=2).contains(&s.alter) {
                        out.push(Violation::new(
                            "alter-range",
                            label.clone(),
                            t,
                            format!("alteration {} outside -2..=2", s.alter),
                        ));
                    }
                }
                check_voice_staff(part, &label, t, n.voice, n.staff, &mut out);
                if let Some(next) = n.tie_next {
                    match part.get(next).and_then(|e| e.as_note()) {
                        None => out.push(Violation::new(
                            "tie-target",
                            label.clone(),
                            t,
                            format!("tie_next {next} is not a registered note"),
                        )),
                        Some(m) => {
                            if m.midi_pitch() != midi {
                                out.push(Violation::new(
                                    "tie-pitch",
                                    label.clone(),
                                    t,
                                    "tied notes must share one midi pitch".into(),
                                ));
                            }
                            let next_span = part.span(next).expect("resolved above");
                            if next_span.start != r.span.end {
                                out.push(Violation::new(
                                    "tie-adjacency",
                                    label.clone(),
                                    t,
                                    format!(
                                        "tied continuation starts at {} but this note ends at {}",
                                        next_span.start, r.span.end
                                    ),
                                ));
                            }
                            if m.tie_prev != Some(r.id) {
                                out.push(Violation::new(
                                    "tie-backlink",
                                    label.clone(),
                                    t,
                                    "tied continuation does not link back".into(),
                                ));
                            }
                        }
                    }
                }
            }
            ScoreElement::Rest(rest) => {
                check_voice_staff(part, &label, t, rest.voice, rest.staff, &mut out);
            }
            ScoreElement::TimeSignature(ts) => {
                if ts.beats < 1 {
                    out.push(Violation::new(
                        "time-signature",
                        label.clone(),
                        t,
                        "beats must be positive".into(),
                    ));
                }
                if ![1, 2, 4, 8, 16, 32].contains(&ts.beat_type) {
                    out.push(Violation::new(
                        "time-signature",
                        label.clone(),
                        t,
                        format!("beat type {} is not a power of two up to 32", ts.beat_type),
                    ));
                }
            }
            ScoreElement::KeySignature(ks) => {
                if !(-7..=7).contains(&ks.fifths) {
                    out.push(Violation::new(
                        "key-signature",
                        label.clone(),
                        t,
                        format!("fifths {} outside -7..=7", ks.fifths),
                    ));
                }
            }
            ScoreElement::Divisions(d) => {
                if d.value < 1 {
                    out.push(Violation::new(
                        "divisions-value",
                        label.clone(),
                        t,
                        "divisions must be at least 1".into(),
                    ));
                }
            }
            ScoreElement::Tempo(tp) => {
                if !(tp.quarter_bpm.is_finite() && tp.quarter_bpm > 0.0) {
                    out.push(Violation::new(
                        "tempo-value",
                        label.clone(),
                        t,
                        "tempo must be a positive number of quarter bpm".into(),
                    ));
                }
            }
            ScoreElement::Slur(slur) => {
                let start = part.get(slur.start_note).and_then(|e| e.as_note());
                let end = part.get(slur.end_note).and_then(|e| e.as_note());
                if start.is_none() || end.is_none() {
                    out.push(Violation::new(
                        "slur-target",
                        label.clone(),
                        t,
                        "slur endpoints must be registered notes".into(),
                    ));
                } else {
                    let s = part.span(slur.start_note).expect("resolved");
                    let e = part.span(slur.end_note).expect("resolved");
                    if s.start > e.start {
                        out.push(Violation::new(
                            "slur-order",
                            label.clone(),
                            t,
                            "slur end note starts before its start note".into(),
                        ));
                    }
                }
            }
            ScoreElement::Measure(_) | ScoreElement::Words(_) => {}
        }
    }

    check_divisions_presence(part, &mut out);
    check_duplicate_divisions(part, &mut out);
    check_measures(part, &mut out);
    out
}

fn check_voice_staff(
    part: &Part,
    label: &str,
    t: Option<Time>,
    voice: Option<u32>,
    staff: Option<u32>,
    out: &mut Vec<Violation>,
) {
    if voice == Some(0) {
        out.push(Violation::new(
            "voice-range",
            label.to_string(),
            t,
            "voices are numbered from 1".into(),
        ));
    }
    if let Some(s) = staff {
        if s < 1 || s > part.staff_count {
            out.push(Violation::new(
                "staff-range",
                label.to_string(),
                t,
                format!("staff {s} outside 1..={}", part.staff_count),
            ));
        }
    }
}

fn check_divisions_presence(part: &Part, out: &mut Vec<Violation>) {
    if part.is_empty() {
        return;
    }
    let mut divisions = part.iter_kind(ElementKind::Divisions, None, None);
    match divisions.next() {
        None => out.push(Violation::new(
            "missing-divisions",
            format!("part {}", part.id),
            None,
            "non-empty part declares no divisions".into(),
        )),
        Some(first) if first.span.start != 0 => out.push(Violation::new(
            "missing-divisions",
            format!("part {}", part.id),
            Some(first.span.start),
            "first divisions element must sit at t=0".into(),
        )),
        Some(_) => {}
    }
}

fn check_duplicate_divisions(part: &Part, out: &mut Vec<Violation>) {
    let mut last_t: Option<Time> = None;
    for r in part.iter_kind(ElementKind::Divisions, None, None) {
        if last_t == Some(r.span.start) {
            out.push(Violation::new(
                "divisions-duplicate",
                format!("{} {}", r.element.describe(), r.id),
                Some(r.span.start),
                "consecutive divisions elements must have distinct t".into(),
            ));
        }
        last_t = Some(r.span.start);
    }
}

fn check_measures(part: &Part, out: &mut Vec<Violation>) {
    let measures: Vec<_> = part.iter_kind(ElementKind::Measure, None, None).collect();
    if measures.is_empty() {
        return;
    }
    let mut last_number: Option<u32> = None;
    let mut last_end: Option<Time> = None;
    for r in &measures {
        let number = match r.element {
            ScoreElement::Measure(m) => m.number,
            _ => unreachable!(),
        };
        let label = format!("measure {number}");
        if let Some(prev) = last_number {
            if number <= prev {
                out.push(Violation::new(
                    "measure-numbers",
                    label.clone(),
                    Some(r.span.start),
                    format!("measure numbers must increase, {number} follows {prev}"),
                ));
            }
        }
        if let Some(prev_end) = last_end {
            if r.span.start != prev_end {
                out.push(Violation::new(
                    "measure-tiling",
                    label.clone(),
                    Some(r.span.start),
                    format!("measure starts at {} but previous ends at {prev_end}", r.span.start),
                ));
            }
        }
        last_number = Some(number);
        last_end = Some(r.span.end);
    }
    let first_start = measures.first().unwrap().span.start;
    let last_end = last_end.unwrap();
    if let (Some(span_start), Some(span_end)) = (part.start_time(), part.end_time()) {
        if first_start > span_start || last_end < span_end {
            out.push(Violation::new(
                "measure-coverage",
                format!("part {}", part.id),
                None,
                format!(
                    "measures cover [{first_start}, {last_end}) but the timeline spans [{span_start}, {span_end}]"
                ),
            ));
        }
    }
}

/// Validates every part of a score plus the cross-part invariants:
/// part ids are unique and the tree has at least one part.
pub fn validate_score(score: &PartGroup) -> Vec<Violation> {
    let mut out = Vec::new();
    let parts = score.parts();
    if parts.is_empty() {
        out.push(Violation::new(
            "empty-score",
            "score".into(),
            None,
            "a score needs at least one part".into(),
        ));
    }
    let mut seen = HashSet::new();
    for part in &parts {
        if !seen.insert(part.id.clone()) {
            out.push(Violation::new(
                "duplicate-part-id",
                format!("part {}", part.id),
                None,
                "part ids must be unique within a score".into(),
            ));
        }
        out.extend(part.validate());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::elements::{Divisions, Measure, Note, Slur, TimeSignature};
    use super::super::pitch::{Pitch, Step};
    use super::*;

    fn valid_part() -> Part {
        let mut part = Part::new("P1");
        part.add(0, 0, Divisions { value: 4 }).unwrap();
        part.add(0, 0, TimeSignature { beats: 4, beat_type: 4 })
            .unwrap();
        part.add(0, 16, Measure { number: 1 }).unwrap();
        part.add(0, 8, Note::new(Pitch::spelled(Step::C, 0, 4)))
            .unwrap();
        part.add(8, 16, Note::new(Pitch::spelled(Step::E, 0, 4)))
            .unwrap();
        part
    }

    #[test]
    fn valid_fixture_is_clean() {
        assert_eq!(valid_part().validate(), Vec::new());
    }

    #[test]
    fn reversed_slur_is_reported() {
        let mut part = valid_part();
        let notes: Vec<_> = part
            .iter_kind(ElementKind::Note, None, None)
            .map(|r| r.id)
            .collect();
        part.add(
            0,
            16,
            Slur {
                start_note: notes[1],
                end_note: notes[0],
            },
        )
        .unwrap();
        let violations = part.validate();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].rule, "slur-order");
    }

    #[test]
    fn staff_outside_part_range_is_reported() {
        let mut part = valid_part();
        part.add(
            16,
            20,
            Note::new(Pitch::spelled(Step::G, 0, 4)).with_staff(2),
        )
        .unwrap();
        part.add(16, 20, Measure { number: 2 }).unwrap();
        let violations = part.validate();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].rule, "staff-range");
    }

    #[test]
    fn measure_gap_is_reported() {
        let mut part = valid_part();
        part.add(20, 24, Measure { number: 2 }).unwrap();
        let rules: Vec<_> = part.validate().into_iter().map(|v| v.rule).collect();
        assert!(rules.contains(&"measure-tiling"));
    }

    #[test]
    fn missing_divisions_is_reported() {
        let mut part = Part::new("P1");
        part.add(0, 4, Note::new(Pitch::spelled(Step::C, 0, 4)))
            .unwrap();
        let rules: Vec<_> = part.validate().into_iter().map(|v| v.rule).collect();
        assert!(rules.contains(&"missing-divisions"));
    }

    #[test]
    fn non_adjacent_tie_is_reported() {
        let mut part = valid_part();
        let notes: Vec<_> = part
            .iter_kind(ElementKind::Note, None, None)
            .map(|r| r.id)
            .collect();
        // The two fixture notes share no boundary pitch-wise: C then E.
        part.link_tie(notes[0], notes[1]).unwrap();
        let rules: Vec<_> = part.validate().into_iter().map(|v| v.rule).collect();
        assert!(rules.contains(&"tie-pitch"));
    }

    #[test]
    fn duplicate_part_ids_reported_at_score_level() {
        let score = PartGroup::from_parts(vec![valid_part(), valid_part()]);
        let violations = validate_score(&score);
        assert!(violations.iter().any(|v| v.rule == "duplicate-part-id"));
    }
}
