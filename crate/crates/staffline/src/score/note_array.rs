use std::collections::HashSet;

use super::elements::{ElementKind, ObjectId, ScoreElement, Time};
use super::part::Part;

/// One flattened pitch event. A chain of tied notes collapses into a
/// single row spanning the whole chain.
#[derive(Clone, Debug, PartialEq)]
pub struct NoteArrayRow {
    pub onset_div: Time,
    pub duration_div: Time,
    pub onset_quarter: f64,
    pub duration_quarter: f64,
    pub midi_pitch: i32,
    /// 0 when the note carries no voice.
    pub voice: u32,
    /// 0 when the note carries no staff.
    pub staff: u32,
    /// Empty when the note carries no id.
    pub id: String,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct NoteArrayOptions {
    /// Include grace notes as zero-duration rows.
    pub include_grace: bool,
}

/// Chains of tied notes in the part, each as the ids of its members in
/// sounding order. Grace chains are included; callers filter.
pub(crate) fn tie_chains(part: &Part) -> Vec<Vec<ObjectId>> {
    let mut chains = Vec::new();
    let mut seen = HashSet::new();
    for r in part.iter_kind(ElementKind::Note, None, None) {
        let note = r.element.as_note().expect("kind filtered");
        let is_head = match note.tie_prev {
            None => true,
            // A dangling backlink does not demote a note to chain member.
            Some(prev) => part.get(prev).and_then(|e| e.as_note()).is_none(),
        };
        if !is_head || seen.contains(&r.id) {
            continue;
        }
        let mut chain = vec![r.id];
        seen.insert(r.id);
        let mut cursor = r.id;
        while let Some(next) = part.note(cursor).ok().and_then(|n| n.tie_next) {
            if seen.contains(&next) || part.note(next).is_err() {
                break;
            }
            chain.push(next);
            seen.insert(next);
            cursor = next;
        }
        chains.push(chain);
    }
    chains
}

pub(crate) fn note_array(part: &Part, options: &NoteArrayOptions) -> Vec<NoteArrayRow> {
    if part.iter_kind(ElementKind::Note, None, None).next().is_none() {
        return Vec::new();
    }
    // Quarter values degrade to a one-division quarter when the part
    // declares no divisions; validate() reports the real defect.
    let qm = part.quarter_map().ok();
    let quarter_at = |t: Time| -> f64 {
        match &qm {
            Some(m) => m.at(t),
            None => t as f64,
        }
    };

    let mut rows = Vec::new();
    for chain in tie_chains(part) {
        let head = part.note(chain[0]).expect("chain members are notes");
        if head.grace && !options.include_grace {
            continue;
        }
        let onset = part.span(chain[0]).expect("registered").start;
        let end = part.span(*chain.last().unwrap()).expect("registered").end;
        let duration: Time = chain
            .iter()
            .map(|id| part.span(*id).expect("registered").duration())
            .sum();
        rows.push(NoteArrayRow {
            onset_div: onset,
            duration_div: duration,
            onset_quarter: quarter_at(onset),
            duration_quarter: quarter_at(end) - quarter_at(onset),
            midi_pitch: head.midi_pitch(),
            voice: head.voice.unwrap_or(0),
            staff: head.staff.unwrap_or(0),
            id: head.id.clone().unwrap_or_default(),
        });
    }
    rows.sort_by(|a, b| {
        (a.onset_div, a.midi_pitch, &a.id).cmp(&(b.onset_div, b.midi_pitch, &b.id))
    });
    rows
}

#[cfg(test)]
mod tests {
    use super::super::elements::{Divisions, Note};
    use super::super::pitch::{Pitch, Step};
    use super::*;

    fn fixture() -> Part {
        let mut part = Part::new("P1");
        part.add(0, 0, Divisions { value: 4 }).unwrap();
        part
    }

    #[test]
    fn chord_rows_sort_by_pitch() {
        let mut part = fixture();
        part.add(0, 4, Note::new(Pitch::spelled(Step::E, 0, 4)))
            .unwrap();
        part.add(0, 4, Note::new(Pitch::spelled(Step::C, 0, 4)))
            .unwrap();
        let rows = part.note_array();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].midi_pitch, 60);
        assert_eq!(rows[1].midi_pitch, 64);
        assert_eq!(rows[0].onset_quarter, 0.0);
        assert_eq!(rows[0].duration_quarter, 1.0);
    }

    #[test]
    fn tied_chain_is_one_row() {
        let mut part = fixture();
        let a = part
            .add(0, 2, Note::new(Pitch::spelled(Step::C, 0, 4)))
            .unwrap();
        let b = part
            .add(2, 4, Note::new(Pitch::spelled(Step::C, 0, 4)))
            .unwrap();
        part.link_tie(a, b).unwrap();
        let rows = part.note_array();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].duration_div, 4);
        assert_eq!(rows[0].duration_quarter, 1.0);
    }

    #[test]
    fn empty_part_yields_no_rows() {
        assert!(Part::new("P1").note_array().is_empty());
    }

    #[test]
    fn grace_notes_are_opt_in() {
        let mut part = fixture();
        part.add(0, 0, Note::new(Pitch::spelled(Step::D, 0, 4)).grace())
            .unwrap();
        part.add(0, 4, Note::new(Pitch::spelled(Step::C, 0, 4)))
            .unwrap();
        assert_eq!(part.note_array().len(), 1);
        let rows = part.note_array_with(&NoteArrayOptions { include_grace: true });
        assert_eq!(rows.len(), 2);
        let grace = rows.iter().find(|r| r.midi_pitch == 62).unwrap();
        assert_eq!(grace.duration_div, 0);
        assert_eq!(grace.duration_quarter, 0.0);
    }
}
