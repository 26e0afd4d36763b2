//! Lempel-Ziv 1976 phrase counting for bit sequences.
//!
//! The sequence is parsed into an exhaustive history: each phrase extends by
//! one symbol the longest prefix of the remaining sequence that already
//! occurs in the text seen so far (the match may overlap the phrase's own
//! start). The phrase count grows like `n / log2(n)` for incompressible
//! sequences and logarithmically for eventually periodic ones, which makes
//! the normalized count a practical randomness proxy.
//!
//! The parse runs in linear time over a suffix automaton of the whole
//! sequence; the earliest-occurrence index stored per state decides whether
//! a candidate match starts strictly before the current position.

use crate::bit::Bit;

#[derive(Clone)]
struct State {
    len: u32,
    link: i32,
    /// End index (0-based, inclusive) of the first occurrence of the
    /// strings this state represents.
    first_end: u32,
    next: [i32; 2],
}

struct Automaton {
    states: Vec<State>,
}

impl Automaton {
    fn with_capacity(text_len: usize) -> Automaton {
        let mut states = Vec::with_capacity(2 * text_len + 2);
        states.push(State { len: 0, link: -1, first_end: u32::MAX, next: [-1; 2] });
        Automaton { states }
    }

    fn extend(&mut self, last: usize, c: usize, end: u32) -> usize {
        let cur = self.states.len();
        self.states.push(State {
            len: self.states[last].len + 1,
            link: -1,
            first_end: end,
            next: [-1; 2],
        });
        let mut p = last as i32;
        while p >= 0 && self.states[p as usize].next[c] < 0 {
            self.states[p as usize].next[c] = cur as i32;
            p = self.states[p as usize].link;
        }
        if p < 0 {
            self.states[cur].link = 0;
        } else {
            let q = self.states[p as usize].next[c] as usize;
            if self.states[p as usize].len + 1 == self.states[q].len {
                self.states[cur].link = q as i32;
            } else {
                let clone = self.states.len();
                let mut cloned = self.states[q].clone();
                cloned.len = self.states[p as usize].len + 1;
                self.states.push(cloned);
                while p >= 0 && self.states[p as usize].next[c] == q as i32 {
                    self.states[p as usize].next[c] = clone as i32;
                    p = self.states[p as usize].link;
                }
                self.states[q].link = clone as i32;
                self.states[cur].link = clone as i32;
            }
        }
        cur
    }
}

/// Number of phrases in the exhaustive-history parse.
pub fn phrase_count(bits: &[Bit]) -> u64 {
    let n = bits.len();
    if n == 0 {
        return 0;
    }
    let mut sam = Automaton::with_capacity(n);
    let mut last = 0;
    for (i, &b) in bits.iter().enumerate() {
        last = sam.extend(last, b.index(), i as u32);
    }

    let mut count = 0u64;
    let mut pos = 0usize;
    while pos < n {
        let mut state = 0usize;
        let mut matched = 0usize;
        while pos + matched < n {
            let c = bits[pos + matched].index();
            let t = sam.states[state].next[c];
            if t < 0 {
                break;
            }
            // The candidate match of length matched+1 must already occur
            // ending before position pos+matched, i.e. start before pos.
            if sam.states[t as usize].first_end as usize >= pos + matched {
                break;
            }
            state = t as usize;
            matched += 1;
        }
        pos += (matched + 1).min(n - pos);
        count += 1;
    }
    count
}
