//! Standard MIDI File reading and writing.
