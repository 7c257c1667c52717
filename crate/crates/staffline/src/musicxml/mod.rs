//! MusicXML reading and writing.
