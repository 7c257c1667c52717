use super::elements::{ElementKind, Note, ObjectId, ScoreElement, Span, Time};
use super::maps::{BeatMap, QuarterMap};
use super::note_array::{NoteArrayOptions, NoteArrayRow};
use super::piano_roll::PianoRoll;
use super::timeline::{TimeLine, TimePoint};
use super::validate::Violation;
use super::ScoreError;

#[derive(Clone, Debug)]
struct Entry {
    element: ScoreElement,
    span: Span,
}

/// A borrowed view of one registered element.
#[derive(Clone, Copy, Debug)]
pub struct ElementRef<'a> {
    pub id: ObjectId,
    pub span: Span,
    pub element: &'a ScoreElement,
}

impl<'a> ElementRef<'a> {
    pub fn start(&self) -> Time {
        self.span.start
    }

    pub fn end(&self) -> Time {
        self.span.end
    }
}

/// One instrument part: identity, staff count and a timeline of elements.
///
/// Elements are added with an explicit `[start, end)` span and can be
/// looked up, iterated in timeline order, or removed again. All derived
/// views (quarter map, beat map, note array, piano roll) are pure reads.
#[derive(Clone, Debug, Default)]
pub struct Part {
    pub id: String,
    pub name: Option<String>,
    pub staff_count: u32,
    timeline: TimeLine,
    entries: Vec<Option<Entry>>,
}

impl Part {
    pub fn new(id: impl Into<String>) -> Part {
        Part {
            id: id.into(),
            name: None,
            staff_count: 1,
            timeline: TimeLine::default(),
            entries: Vec::new(),
        }
    }

    /// Registers `element` on the timeline over `[start, end)`, creating
    /// the timepoints as needed, and returns its handle.
    pub fn add(
        &mut self,
        start: Time,
        end: Time,
        element: impl Into<ScoreElement>,
    ) -> Result<ObjectId, ScoreError> {
        if start < 0 {
            return Err(ScoreError::NegativeTime(start));
        }
        if end < start {
            return Err(ScoreError::InvertedSpan { start, end });
        }
        let id = ObjectId(self.entries.len() as u32);
        let span = Span::new(start, end);
        self.entries.push(Some(Entry {
            element: element.into(),
            span,
        }));
        self.timeline.register(id, span);
        Ok(id)
    }

    /// Unregisters an element and returns it. Timepoints left without any
    /// references disappear; tie links into the removed note are cleared.
    ///
    /// Removing a note that a registered slur still points at is refused,
    /// so slur references never dangle.
    pub fn remove(&mut self, id: ObjectId) -> Result<ScoreElement, ScoreError> {
        let span = self.span(id).ok_or(ScoreError::NotRegistered(id))?;
        if let Some(slur) = self.referencing_slur(id) {
            return Err(ScoreError::SlurReference { note: id, slur });
        }
        let entry = self.entries[id.0 as usize].take().expect("span checked");
        self.timeline.unregister(id, span);
        if let ScoreElement::Note(note) = &entry.element {
            if let Some(prev) = note.tie_prev {
                if let Some(n) = self.note_opt_mut(prev) {
                    n.tie_next = None;
                }
            }
            if let Some(next) = note.tie_next {
                if let Some(n) = self.note_opt_mut(next) {
                    n.tie_prev = None;
                }
            }
        }
        Ok(entry.element)
    }

    fn referencing_slur(&self, id: ObjectId) -> Option<ObjectId> {
        self.entries.iter().enumerate().find_map(|(i, e)| match e {
            Some(Entry {
                element: ScoreElement::Slur(s),
                ..
            }) if s.start_note == id || s.end_note == id => Some(ObjectId(i as u32)),
            _ => None,
        })
    }

    pub fn get(&self, id: ObjectId) -> Option<&ScoreElement> {
        self.entries
            .get(id.0 as usize)
            .and_then(|e| e.as_ref())
            .map(|e| &e.element)
    }

    pub fn get_mut(&mut self, id: ObjectId) -> Option<&mut ScoreElement> {
        self.entries
            .get_mut(id.0 as usize)
            .and_then(|e| e.as_mut())
            .map(|e| &mut e.element)
    }

    pub fn span(&self, id: ObjectId) -> Option<Span> {
        self.entries
            .get(id.0 as usize)
            .and_then(|e| e.as_ref())
            .map(|e| e.span)
    }

    pub fn note(&self, id: ObjectId) -> Result<&Note, ScoreError> {
        self.get(id)
            .ok_or(ScoreError::NotRegistered(id))?
            .as_note()
            .ok_or(ScoreError::NotANote(id))
    }

    pub fn note_mut(&mut self, id: ObjectId) -> Result<&mut Note, ScoreError> {
        if self.get(id).is_none() {
            return Err(ScoreError::NotRegistered(id));
        }
        self.get_mut(id)
            .unwrap()
            .as_note_mut()
            .ok_or(ScoreError::NotANote(id))
    }

    fn note_opt_mut(&mut self, id: ObjectId) -> Option<&mut Note> {
        self.get_mut(id).and_then(|e| e.as_note_mut())
    }

    /// Marks `prev` and `next` as one tied pair, setting both directions.
    pub fn link_tie(&mut self, prev: ObjectId, next: ObjectId) -> Result<(), ScoreError> {
        self.note(prev)?;
        self.note(next)?;
        self.note_mut(prev)?.tie_next = Some(next);
        self.note_mut(next)?.tie_prev = Some(prev);
        Ok(())
    }

    /// All registered elements ordered by (start, registration order).
    pub fn elements(&self) -> impl Iterator<Item = ElementRef<'_>> {
        self.timeline.points().flat_map(move |(_, point)| {
            point.starting().iter().map(move |id| self.element_ref(*id))
        })
    }

    /// Elements of one kind whose start lies in `[from, to)`; the full
    /// span when a bound is omitted.
    pub fn iter_kind(
        &self,
        kind: ElementKind,
        from: Option<Time>,
        to: Option<Time>,
    ) -> impl Iterator<Item = ElementRef<'_>> {
        self.timeline
            .points_in(from, to)
            .flat_map(move |(_, point)| {
                point.starting().iter().map(move |id| self.element_ref(*id))
            })
            .filter(move |r| r.element.kind() == kind)
    }

    fn element_ref(&self, id: ObjectId) -> ElementRef<'_> {
        let entry = self.entries[id.0 as usize]
            .as_ref()
            .expect("timeline refers to live entries");
        ElementRef {
            id,
            span: entry.span,
            element: &entry.element,
        }
    }

    pub fn timepoints(&self) -> impl Iterator<Item = (Time, &TimePoint)> {
        self.timeline.points()
    }

    pub fn timepoint_count(&self) -> usize {
        self.timeline.len()
    }

    /// Position of the first timepoint, if any element is registered.
    pub fn start_time(&self) -> Option<Time> {
        self.timeline.first_t()
    }

    /// Position of the last timepoint, i.e. the furthest element end.
    pub fn end_time(&self) -> Option<Time> {
        self.timeline.last_t()
    }

    pub fn is_empty(&self) -> bool {
        self.timeline.is_empty()
    }

    /// Piecewise-linear map from divisions to quarter offsets.
    pub fn quarter_map(&self) -> Result<QuarterMap, ScoreError> {
        QuarterMap::from_part(self)
    }

    /// Convenience for a single [`QuarterMap`] lookup.
    pub fn quarter_at(&self, t: Time) -> Result<f64, ScoreError> {
        Ok(self.quarter_map()?.at(t))
    }

    /// Map from divisions to beat offsets of the governing time signature.
    pub fn beat_map(&self) -> Result<BeatMap, ScoreError> {
        BeatMap::from_part(self)
    }

    pub fn beat_at(&self, t: Time) -> Result<f64, ScoreError> {
        Ok(self.beat_map()?.at(t))
    }

    pub fn note_array(&self) -> Vec<NoteArrayRow> {
        self.note_array_with(&NoteArrayOptions::default())
    }

    pub fn note_array_with(&self, options: &NoteArrayOptions) -> Vec<NoteArrayRow> {
        super::note_array::note_array(self, options)
    }

    pub fn piano_roll(&self, divs_per_cell: Time) -> PianoRoll {
        PianoRoll::from_part(self, divs_per_cell)
    }

    /// Checks every model invariant and returns the violations found.
    /// An empty result means the part is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        super::validate::validate_part(self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::elements::{Divisions, Measure, Rest, Slur, TimeSignature};
    use super::super::pitch::{Pitch, Step};
    use super::*;

    fn c4() -> Note {
        Note::new(Pitch::spelled(Step::C, 0, 4))
    }

    #[test]
    fn add_creates_timepoints() {
        let mut part = Part::new("P1");
        let id = part.add(0, 4, c4()).unwrap();
        let points: Vec<Time> = part.timepoints().map(|(t, _)| t).collect();
        assert_eq!(points, vec![0, 4]);
        assert_eq!(part.span(id).unwrap(), Span::new(0, 4));
        let (_, first) = part.timepoints().next().unwrap();
        assert_eq!(first.starting(), &[id]);
    }

    #[test]
    fn add_zero_duration_point_element() {
        let mut part = Part::new("P1");
        let id = part
            .add(4, 4, TimeSignature { beats: 3, beat_type: 4 })
            .unwrap();
        assert_eq!(part.timepoint_count(), 1);
        let (t, point) = part.timepoints().next().unwrap();
        assert_eq!(t, 4);
        assert_eq!(point.starting(), &[id]);
        assert_eq!(point.ending(), &[id]);
    }

    #[test]
    fn add_rejects_bad_spans() {
        let mut part = Part::new("P1");
        assert!(matches!(
            part.add(-1, 4, c4()),
            Err(ScoreError::NegativeTime(-1))
        ));
        assert!(matches!(
            part.add(4, 0, c4()),
            Err(ScoreError::InvertedSpan { start: 4, end: 0 })
        ));
    }

    #[test]
    fn remove_restores_empty_timeline() {
        let mut part = Part::new("P1");
        let id = part.add(0, 4, c4()).unwrap();
        part.remove(id).unwrap();
        assert!(part.is_empty());
        assert!(part.get(id).is_none());
    }

    #[test]
    fn remove_twice_is_a_state_error() {
        let mut part = Part::new("P1");
        let id = part.add(0, 4, c4()).unwrap();
        part.remove(id).unwrap();
        assert!(matches!(part.remove(id), Err(ScoreError::NotRegistered(_))));
    }

    #[test]
    fn remove_keeps_shared_timepoints() {
        let mut part = Part::new("P1");
        let a = part.add(0, 4, c4()).unwrap();
        let _b = part.add(0, 2, c4()).unwrap();
        part.remove(a).unwrap();
        let points: Vec<Time> = part.timepoints().map(|(t, _)| t).collect();
        assert_eq!(points, vec![0, 2]);
    }

    #[test]
    fn remove_slurred_note_is_refused() {
        let mut part = Part::new("P1");
        let a = part.add(0, 4, c4()).unwrap();
        let b = part.add(4, 8, c4()).unwrap();
        part.add(
            0,
            8,
            Slur {
                start_note: a,
                end_note: b,
            },
        )
        .unwrap();
        assert!(matches!(
            part.remove(a),
            Err(ScoreError::SlurReference { .. })
        ));
    }

    #[test]
    fn removing_tied_note_clears_links() {
        let mut part = Part::new("P1");
        let a = part.add(0, 2, c4()).unwrap();
        let b = part.add(2, 4, c4()).unwrap();
        part.link_tie(a, b).unwrap();
        part.remove(b).unwrap();
        assert_eq!(part.note(a).unwrap().tie_next, None);
    }

    #[test]
    fn iter_kind_half_open_interval() {
        let mut part = Part::new("P1");
        part.add(0, 0, Divisions { value: 1 }).unwrap();
        let n0 = part.add(0, 2, c4()).unwrap();
        let n2 = part.add(2, 4, c4()).unwrap();
        let _n4 = part.add(4, 6, c4()).unwrap();
        let hits: Vec<ObjectId> = part
            .iter_kind(ElementKind::Note, Some(0), Some(4))
            .map(|r| r.id)
            .collect();
        assert_eq!(hits, vec![n0, n2]);
    }

    #[test]
    fn iter_kind_filters_exactly_one_class() {
        let mut part = Part::new("P1");
        part.add(0, 0, Divisions { value: 1 }).unwrap();
        part.add(0, 4, c4()).unwrap();
        part.add(0, 4, Rest::default()).unwrap();
        part.add(0, 4, Measure { number: 1 }).unwrap();
        assert_eq!(part.iter_kind(ElementKind::Rest, None, None).count(), 1);
        assert_eq!(part.iter_kind(ElementKind::Measure, None, None).count(), 1);
        assert_eq!(part.iter_kind(ElementKind::Slur, None, None).count(), 0);
    }

    #[test]
    fn iter_kind_empty_part() {
        let part = Part::new("P1");
        assert_eq!(part.iter_kind(ElementKind::Measure, None, None).count(), 0);
    }
}
