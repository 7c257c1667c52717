use std::fmt;

use super::pitch::Pitch;

/// Timeline position or duration in divisions.
pub type Time = i64;

/// Handle to an element registered in a [`super::Part`]. Ids are never
/// reused, so a handle kept across a removal simply stops resolving.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(pub(crate) u32);

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Half-open interval `[start, end)` on the timeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: Time,
    pub end: Time,
}

impl Span {
    pub fn new(start: Time, end: Time) -> Span {
        Span { start, end }
    }

    pub fn duration(&self) -> Time {
        self.end - self.start
    }

    pub fn contains(&self, t: Time) -> bool {
        self.start <= t && t < self.end
    }

    pub fn overlaps(&self, other: Span) -> bool {
        self.start < other.end && other.start < self.end
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Note {
    pub pitch: Pitch,
    pub voice: Option<u32>,
    pub staff: Option<u32>,
    pub id: Option<String>,
    pub grace: bool,
    /// Previous note of a tied chain, if any.
    pub tie_prev: Option<ObjectId>,
    /// Next note of a tied chain, if any.
    pub tie_next: Option<ObjectId>,
}

impl Note {
    pub fn new(pitch: Pitch) -> Note {
        Note {
            pitch,
            voice: None,
            staff: None,
            id: None,
            grace: false,
            tie_prev: None,
            tie_next: None,
        }
    }

    pub fn with_voice(mut self, voice: u32) -> Note {
        self.voice = Some(voice);
        self
    }

    pub fn with_staff(mut self, staff: u32) -> Note {
        self.staff = Some(staff);
        self
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Note {
        self.id = Some(id.into());
        self
    }

    pub fn grace(mut self) -> Note {
        self.grace = true;
        self
    }

    pub fn midi_pitch(&self) -> i32 {
        self.pitch.midi_value()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Rest {
    pub voice: Option<u32>,
    pub staff: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measure {
    pub number: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TimeSignature {
    pub beats: u32,
    /// Note value of one beat: 1, 2, 4, 8, 16 or 32.
    pub beat_type: u32,
}

impl TimeSignature {
    /// Quarters per beat, e.g. 0.5 for an eighth-note beat.
    pub fn quarters_per_beat(&self) -> f64 {
        4.0 / self.beat_type as f64
    }

    pub fn quarters_per_measure(&self) -> f64 {
        self.beats as f64 * self.quarters_per_beat()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Major,
    Minor,
    /// Key signature without a stated mode.
    None,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Mode::Major => "major",
            Mode::Minor => "minor",
            Mode::None => "none",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KeySignature {
    /// Sharps when positive, flats when negative.
    pub fifths: i8,
    pub mode: Mode,
}

/// Divisions per quarter note from this element's position onward.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Divisions {
    pub value: u32,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tempo {
    pub quarter_bpm: f64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Words {
    pub text: String,
}

/// Cross-reference between the first and last note under a slur.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slur {
    pub start_note: ObjectId,
    pub end_note: ObjectId,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScoreElement {
    Note(Note),
    Rest(Rest),
    Measure(Measure),
    TimeSignature(TimeSignature),
    KeySignature(KeySignature),
    Divisions(Divisions),
    Slur(Slur),
    Tempo(Tempo),
    Words(Words),
}

impl ScoreElement {
    pub fn kind(&self) -> ElementKind {
        match self {
            ScoreElement::Note(_) => ElementKind::Note,
            ScoreElement::Rest(_) => ElementKind::Rest,
            ScoreElement::Measure(_) => ElementKind::Measure,
            ScoreElement::TimeSignature(_) => ElementKind::TimeSignature,
            ScoreElement::KeySignature(_) => ElementKind::KeySignature,
            ScoreElement::Divisions(_) => ElementKind::Divisions,
            ScoreElement::Slur(_) => ElementKind::Slur,
            ScoreElement::Tempo(_) => ElementKind::Tempo,
            ScoreElement::Words(_) => ElementKind::Words,
        }
    }

    /// Point-like elements may be registered with start == end.
    pub fn zero_duration_allowed(&self) -> bool {
        match self {
            ScoreElement::TimeSignature(_)
            | ScoreElement::KeySignature(_)
            | ScoreElement::Divisions(_)
            | ScoreElement::Tempo(_)
            | ScoreElement::Words(_) => true,
            ScoreElement::Note(n) => n.grace,
            _ => false,
        }
    }

    pub fn as_note(&self) -> Option<&Note> {
        match self {
            ScoreElement::Note(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_note_mut(&mut self) -> Option<&mut Note> {
        match self {
            ScoreElement::Note(n) => Some(n),
            _ => None,
        }
    }

    /// Short label for diagnostics: the note id when present, else the kind.
    pub fn describe(&self) -> String {
        match self {
            ScoreElement::Note(n) => match &n.id {
                Some(id) => format!("note {id}"),
                None => "note".to_string(),
            },
            other => other.kind().to_string(),
        }
    }
}

macro_rules! element_from {
    ($ty:ty, $variant:ident) => {
        impl From<$ty> for ScoreElement {
            fn from(value: $ty) -> ScoreElement {
                ScoreElement::$variant(value)
            }
        }
    };
}

element_from!(Note, Note);
element_from!(Rest, Rest);
element_from!(Measure, Measure);
element_from!(TimeSignature, TimeSignature);
element_from!(KeySignature, KeySignature);
element_from!(Divisions, Divisions);
element_from!(Slur, Slur);
element_from!(Tempo, Tempo);
element_from!(Words, Words);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Note,
    Rest,
    Measure,
    TimeSignature,
    KeySignature,
    Divisions,
    Slur,
    Tempo,
    Words,
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ElementKind::Note => "note",
            ElementKind::Rest => "rest",
            ElementKind::Measure => "measure",
            ElementKind::TimeSignature => "time signature",
            ElementKind::KeySignature => "key signature",
            ElementKind::Divisions => "divisions",
            ElementKind::Slur => "slur",
            ElementKind::Tempo => "tempo",
            ElementKind::Words => "words",
        };
        write!(f, "{s}")
    }
}
