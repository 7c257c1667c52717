//! The in-memory score model.
//!
//! Time is a non-negative integer number of *divisions*. A [`Divisions`]
//! element registered on the timeline states how many divisions make up a
//! quarter note from its position onward, so positions stay integral while
//! still mapping exactly onto both MusicXML durations and MIDI ticks.

mod elements;
mod group;
mod maps;
mod note_array;
mod part;
mod piano_roll;
mod pitch;
mod timeline;
mod validate;

pub use elements::{
    Divisions, ElementKind, KeySignature, Measure, Mode, Note, ObjectId, Rest, ScoreElement, Slur,
    Span, Tempo, Time, TimeSignature, Words,
};
pub use group::{PartGroup, ScoreNode};
pub use maps::{BeatMap, QuarterMap};
pub use note_array::{NoteArrayOptions, NoteArrayRow};
pub use part::{ElementRef, Part};
pub use piano_roll::PianoRoll;
pub use pitch::{Pitch, Spelling, Step};
pub use timeline::TimePoint;
pub use validate::{validate_score, Violation};

use thiserror::Error;

/// Errors raised by timeline mutation and by the derived time maps.
#[derive(Debug, Error)]
pub enum ScoreError {
    #[error("time must be non-negative, got {0}")]
    NegativeTime(Time),
    #[error("span end {end} precedes start {start}")]
    InvertedSpan { start: Time, end: Time },
    #[error("object {0} is not registered in this part")]
    NotRegistered(ObjectId),
    #[error("object {0} is not a note")]
    NotANote(ObjectId),
    #[error("note {note} is still referenced by slur {slur}")]
    SlurReference { note: ObjectId, slur: ObjectId },
    #[error("part has no divisions; register a Divisions element at t=0 first")]
    NoDivisions,
    #[error("first divisions element sits at t={0}, expected t=0")]
    LateDivisions(Time),
    #[error("part has no time signature at t=0")]
    NoTimeSignature,
    #[error("division arithmetic overflowed while rescaling")]
    DivisionOverflow,
}
