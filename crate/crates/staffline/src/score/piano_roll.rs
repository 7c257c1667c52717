use super::elements::{ElementKind, Time};
use super::part::Part;

/// Binary occupancy matrix over 128 MIDI pitches and fixed-width time
/// windows. A cell is set when some non-grace note of that pitch sounds
/// anywhere within the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PianoRoll {
    width: usize,
    cells: Vec<bool>,
}

impl PianoRoll {
    pub const PITCHES: usize = 128;

    pub(crate) fn from_part(part: &Part, divs_per_cell: Time) -> PianoRoll {
        let cell = divs_per_cell.max(1);
        let span_end = part.end_time().unwrap_or(0);
        let width = span_end.div_euclid(cell) as usize
            + if span_end.rem_euclid(cell) > 0 { 1 } else { 0 };
        let mut roll = PianoRoll {
            width,
            cells: vec![false; width * Self::PITCHES],
        };
        for r in part.iter_kind(ElementKind::Note, None, None) {
            let note = r.element.as_note().expect("kind filtered");
            if note.grace || r.span.duration() == 0 {
                continue;
            }
            let pitch = note.midi_pitch();
            if !(0..128).contains(&pitch) {
                continue;
            }
            let first = r.span.start.div_euclid(cell);
            let last = (r.span.end - 1).div_euclid(cell);
            for w in first..=last {
                roll.set(pitch as usize, w as usize);
            }
        }
        roll
    }

    fn set(&mut self, pitch: usize, window: usize) {
        if window < self.width {
            self.cells[pitch * self.width + window] = true;
        }
    }

    pub fn get(&self, pitch: usize, window: usize) -> bool {
        pitch < Self::PITCHES && window < self.width && self.cells[pitch * self.width + window]
    }

    /// Number of time windows.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn set_cell_count(&self) -> usize {
        self.cells.iter().filter(|c| **c).count()
    }
}

#[cfg(test)]
mod tests {
    use super::super::elements::{Divisions, Note};
    use super::super::pitch::{Pitch, Step};
    use super::*;

    fn single_c4() -> Part {
        let mut part = Part::new("P1");
        part.add(0, 0, Divisions { value: 4 }).unwrap();
        part.add(0, 4, Note::new(Pitch::spelled(Step::C, 0, 4)))
            .unwrap();
        part
    }

    #[test]
    fn one_cell_when_cell_spans_note() {
        let roll = single_c4().piano_roll(4);
        assert_eq!(roll.width(), 1);
        assert!(roll.get(60, 0));
        assert_eq!(roll.set_cell_count(), 1);
    }

    #[test]
    fn two_cells_at_half_resolution() {
        let roll = single_c4().piano_roll(2);
        assert_eq!(roll.width(), 2);
        assert!(roll.get(60, 0));
        assert!(roll.get(60, 1));
        assert_eq!(roll.set_cell_count(), 2);
    }

    #[test]
    fn empty_part_has_zero_width() {
        let roll = Part::new("P1").piano_roll(4);
        assert_eq!(roll.width(), 0);
        assert_eq!(roll.set_cell_count(), 0);
    }
}
