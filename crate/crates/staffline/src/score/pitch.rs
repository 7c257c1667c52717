use std::fmt;

/// A note letter, C through B.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    C,
    D,
    E,
    F,
    G,
    A,
    B,
}

impl Step {
    pub const ALL: [Step; 7] = [
        Step::C,
        Step::D,
        Step::E,
        Step::F,
        Step::G,
        Step::A,
        Step::B,
    ];

    /// Semitones above C within one octave.
    pub fn semitone(self) -> i32 {
        match self {
            Step::C => 0,
            Step::D => 2,
            Step::E => 4,
            Step::F => 5,
            Step::G => 7,
            Step::A => 9,
            Step::B => 11,
        }
    }

    /// Letter index 0..=6 with C = 0.
    pub fn morph(self) -> usize {
        match self {
            Step::C => 0,
            Step::D => 1,
            Step::E => 2,
            Step::F => 3,
            Step::G => 4,
            Step::A => 5,
            Step::B => 6,
        }
    }

    pub fn from_morph(morph: usize) -> Step {
        Step::ALL[morph % 7]
    }

    pub fn from_char(c: char) -> Option<Step> {
        match c.to_ascii_uppercase() {
            'C' => Some(Step::C),
            'D' => Some(Step::D),
            'E' => Some(Step::E),
            'F' => Some(Step::F),
            'G' => Some(Step::G),
            'A' => Some(Step::A),
            'B' => Some(Step::B),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Step::C => 'C',
            Step::D => 'D',
            Step::E => 'E',
            Step::F => 'F',
            Step::G => 'G',
            Step::A => 'A',
            Step::B => 'B',
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A spelled pitch: letter, chromatic alteration and scientific octave
/// (C4 is middle C).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Spelling {
    pub step: Step,
    pub alter: i8,
    pub octave: i8,
}

impl Spelling {
    pub fn new(step: Step, alter: i8, octave: i8) -> Spelling {
        Spelling {
            step,
            alter,
            octave,
        }
    }

    /// MIDI note number implied by the spelling. May fall outside 0..=127
    /// for extreme octaves; `Part::validate` reports such notes.
    pub fn midi(&self) -> i32 {
        (self.octave as i32 + 1) * 12 + self.step.semitone() + self.alter as i32
    }
}

impl fmt::Display for Spelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.step)?;
        let accidentals = match self.alter {
            0 => "",
            1 => "#",
            2 => "##",
            -1 => "b",
            -2 => "bb",
            _ => "?",
        };
        write!(f, "{}{}", accidentals, self.octave)
    }
}

/// Pitch of a note: either fully spelled, or a bare MIDI number awaiting
/// spelling estimation (the state of notes loaded from MIDI files).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pitch {
    Spelled(Spelling),
    Midi(u8),
}

impl Pitch {
    pub fn spelled(step: Step, alter: i8, octave: i8) -> Pitch {
        Pitch::Spelled(Spelling::new(step, alter, octave))
    }

    pub fn midi_value(&self) -> i32 {
        match self {
            Pitch::Spelled(s) => s.midi(),
            Pitch::Midi(p) => *p as i32,
        }
    }

    pub fn spelling(&self) -> Option<Spelling> {
        match self {
            Pitch::Spelled(s) => Some(*s),
            Pitch::Midi(_) => None,
        }
    }

    /// Pitch class 0..=11.
    pub fn chroma(&self) -> u8 {
        self.midi_value().rem_euclid(12) as u8
    }
}
