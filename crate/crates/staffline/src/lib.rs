//! Staffline models musical scores on an explicit timeline.
//!
//! A score is a tree of [`score::Part`]s, each owning a timeline of
//! [`score::TimePoint`]s. Notes, rests, measures, signatures, slurs and
//! directions are registered on the timeline by their start and end
//! positions, measured in integer divisions of a quarter note. From that
//! model the crate derives reductive views (note arrays, piano rolls),
//! reads and writes MusicXML and Standard MIDI Files, and estimates
//! notation information that reductive inputs lack: key signature, pitch
//! spelling and voices.
//!
//! ```
//! use staffline::score::{Divisions, Note, Part, Pitch, Step};
//!
//! let mut part = Part::new("P1");
//! part.add(0, 0, Divisions { value: 4 }).unwrap();
//! part.add(0, 4, Note::new(Pitch::spelled(Step::C, 0, 4))).unwrap();
//! let rows = part.note_array();
//! assert_eq!(rows[0].midi_pitch, 60);
//! assert_eq!(rows[0].duration_quarter, 1.0);
//! ```
//!
//! Parts have no interior mutability: mutate them exclusively while
//! building, then share them freely across threads for reading.
//!
//! See the `examples/` directory for one runnable program per major
//! capability, and the `staffline` binary for file conversion on the
//! command line.

pub mod analysis;
pub mod midi;
pub mod musicxml;
pub mod score;

pub use score::{Part, PartGroup, ScoreElement, ScoreNode};
