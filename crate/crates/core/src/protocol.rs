//! Message-passing simulation of Share → Eval → Rec with a byte-exact wire format.
//!
//! Frame layout (all integers little-endian):
//!
//! | bytes | field |
//! |-------|-------|
//! | 1 | version, `0x01` |
//! | 1 | kind: 1 input shares, 2 output shares, 3 result |
//! | 1 | element width w in bytes |
//! | 2 | sender id |
//! | 2 | receiver id |
//! | 4 | payload length in bytes |
//! | * | payload, elements as w-byte integers |
//!
//! Ids: input client 0, servers 1..=s, output client s+1. The output client sends
//! the reconstructed values back to id 0.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{DecodeError, Error, Result};
use crate::galois::{Fe, Field};
use crate::hss::{HssScheme, ServerView, SharedInputs};

pub const WIRE_VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = 11;
pub const TRANSCRIPT_TAG: &str = "labelweight-hss-transcript/v1";

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MessageKind {
    InputShares = 1,
    OutputShares = 2,
    Result = 3,
}

impl MessageKind {
    fn from_byte(b: u8) -> Result<MessageKind, DecodeError> {
        match b {
            1 => Ok(MessageKind::InputShares),
            2 => Ok(MessageKind::OutputShares),
            3 => Ok(MessageKind::Result),
            other => Err(DecodeError::BadKind(other)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WireMessage {
    pub kind: MessageKind,
    pub sender: u16,
    pub receiver: u16,
    /// Bytes per element, 1 to 4.
    pub width: u8,
    pub elements: Vec<u32>,
}

impl WireMessage {
    pub fn new(field: &Field, kind: MessageKind, sender: u16, receiver: u16, elements: &[Fe]) -> WireMessage {
        WireMessage {
            kind,
            sender,
            receiver,
            width: field.element_bytes() as u8,
            elements: elements.iter().map(|e| e.0).collect(),
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        let w = self.width as usize;
        let payload_len = self.elements.len() * w;
        let mut out = Vec::with_capacity(HEADER_LEN + payload_len);
        out.push(WIRE_VERSION);
        out.push(self.kind as u8);
        out.push(self.width);
        out.extend_from_slice(&self.sender.to_le_bytes());
        out.extend_from_slice(&self.receiver.to_le_bytes());
        out.extend_from_slice(&(payload_len as u32).to_le_bytes());
        for &e in &self.elements {
            out.extend_from_slice(&e.to_le_bytes()[..w]);
        }
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<WireMessage, DecodeError> {
        if bytes.len() < HEADER_LEN {
            return Err(DecodeError::Truncated { needed: HEADER_LEN, have: bytes.len() });
        }
        if bytes[0] != WIRE_VERSION {
            return Err(DecodeError::BadVersion(bytes[0]));
        }
        let kind = MessageKind::from_byte(bytes[1])?;
        let width = bytes[2];
        if !(1..=4).contains(&width) {
            return Err(DecodeError::BadWidth(width));
        }
        let sender = u16::from_le_bytes([bytes[3], bytes[4]]);
        let receiver = u16::from_le_bytes([bytes[5], bytes[6]]);
        let declared = u32::from_le_bytes([bytes[7], bytes[8], bytes[9], bytes[10]]) as usize;
        let actual = bytes.len() - HEADER_LEN;
        if actual < declared {
            return Err(DecodeError::Truncated { needed: HEADER_LEN + declared, have: bytes.len() });
        }
        if actual > declared || !declared.is_multiple_of(width as usize) {
            return Err(DecodeError::LengthMismatch { declared, actual });
        }
        let elements = bytes[HEADER_LEN..]
            .chunks(width as usize)
            .map(|c| {
                let mut buf = [0u8; 4];
                buf[..c.len()].copy_from_slice(c);
                u32::from_le_bytes(buf)
            })
            .collect();
        Ok(WireMessage { kind, sender, receiver, width, elements })
    }

    /// Elements as members of `field`, rejecting out-of-range values and a wrong width.
    pub fn elements_in(&self, field: &Field) -> Result<Vec<Fe>, DecodeError> {
        if self.width as usize != field.element_bytes() {
            return Err(DecodeError::BadWidth(self.width));
        }
        self.elements
            .iter()
            .map(|&v| {
                if v < field.order() {
                    Ok(Fe(v))
                } else {
                    Err(DecodeError::ElementOutOfRange { value: v, order: field.order() })
                }
            })
            .collect()
    }
}

/// Order in which actors get to run.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Schedule {
    /// Ids in increasing order, one message per actor per round.
    RoundRobin,
    /// A fresh seeded permutation of the actors every round.
    Shuffled(u64),
}

/// Everything that crossed the wire, in send order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Transcript {
    pub frames: Vec<Vec<u8>>,
    /// Bytes per (sender, receiver) link, frames included.
    pub link_bytes: BTreeMap<(u16, u16), u64>,
    /// Field symbols received by the output client.
    pub download_symbols: u64,
    pub bits_per_symbol: f64,
}

impl Transcript {
    fn record(&mut self, msg: &WireMessage, frame: &[u8], output_client: u16) {
        *self.link_bytes.entry((msg.sender, msg.receiver)).or_insert(0) += frame.len() as u64;
        if msg.kind == MessageKind::OutputShares && msg.receiver == output_client {
            self.download_symbols += msg.elements.len() as u64;
        }
        self.frames.push(frame.to_vec());
    }

    pub fn download_bits(&self) -> f64 {
        self.download_symbols as f64 * self.bits_per_symbol
    }

    /// Download cost over output size, both in field symbols: n/ℓ for an honest run.
    pub fn cost_per_output(&self, ell: usize) -> Ratio<u64> {
        Ratio::new(self.download_symbols, ell as u64)
    }

    /// Measured download rate ℓ/(downloaded symbols).
    pub fn measured_rate(&self, ell: usize) -> Ratio<u64> {
        Ratio::new(ell as u64, self.download_symbols)
    }

    pub fn dump(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{TRANSCRIPT_TAG}").unwrap();
        for f in &self.frames {
            for b in f {
                write!(out, "{b:02x}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Frames of a dumped transcript.
    pub fn parse_dump(text: &str) -> Result<Vec<Vec<u8>>> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        match lines.next() {
            Some(l) if l.trim() == TRANSCRIPT_TAG => {}
            _ => return Err(DecodeError::Unexpected(format!("missing `{TRANSCRIPT_TAG}` header")).into()),
        }
        lines
            .map(|l| {
                let l = l.trim();
                if !l.is_ascii() || l.len() % 2 != 0 {
                    return Err(DecodeError::BadHex(l.to_string()).into());
                }
                (0..l.len())
                    .step_by(2)
                    .map(|i| u8::from_str_radix(&l[i..i + 2], 16).map_err(|_| DecodeError::BadHex(l.to_string()).into()))
                    .collect()
            })
            .collect()
    }
}

/// Lets a test corrupt frame `index` in flight.
pub type TamperHook<'a> = Box<dyn FnMut(usize, &mut Vec<u8>) + 'a>;

pub struct SimOptions<'a> {
    pub schedule: Schedule,
    pub tamper: Option<TamperHook<'a>>,
}

impl Default for SimOptions<'_> {
    fn default() -> Self {
        SimOptions { schedule: Schedule::RoundRobin, tamper: None }
    }
}

#[derive(Clone, Debug)]
pub struct Simulation {
    pub transcript: Transcript,
    pub outputs: Vec<Fe>,
    /// Downloaded symbols in code coordinate order.
    pub z: Vec<Fe>,
}

pub fn simulate(scheme: &HssScheme, secrets: &[Vec<Fe>], seed: u64) -> Result<Simulation> {
    simulate_with(scheme, secrets, seed, SimOptions::default())
}

pub fn simulate_with(
    scheme: &HssScheme,
    secrets: &[Vec<Fe>],
    seed: u64,
    mut options: SimOptions<'_>,
) -> Result<Simulation> {
    let field = scheme.field();
    let s = scheme.params.s;
    if s + 1 > u16::MAX as usize {
        return Err(Error::ParameterOutOfRange("too many servers for 16-bit ids".into()));
    }
    let output_id = (s + 1) as u16;
    let actors = s + 2;
    let mut inboxes: Vec<VecDeque<Vec<u8>>> = vec![VecDeque::new(); actors];
    let mut transcript = Transcript { bits_per_symbol: field.bits_per_symbol(), ..Transcript::default() };
    let mut frame_count = 0usize;
    let schedule = options.schedule;
    let mut tamper = options.tamper.take();
    let mut send = |msg: WireMessage, inboxes: &mut Vec<VecDeque<Vec<u8>>>, transcript: &mut Transcript| {
        let mut frame = msg.encode();
        transcript.record(&msg, &frame, output_id);
        if let Some(hook) = tamper.as_mut() {
            hook(frame_count, &mut frame);
        }
        frame_count += 1;
        inboxes[msg.receiver as usize].push_back(frame);
    };

    // input client
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subsets = &scheme.monomials.subsets;
    let inputs = SharedInputs::share(field, &scheme.params, subsets, secrets, &mut rng)?;
    for j in 0..s {
        let payload = inputs.view(subsets, j).flatten();
        let msg = WireMessage::new(field, MessageKind::InputShares, 0, (j + 1) as u16, &payload);
        send(msg, &mut inboxes, &mut transcript);
    }

    let mut received: BTreeMap<usize, Vec<Fe>> = BTreeMap::new();
    let mut result: Option<Vec<Fe>> = None;
    let mut order: Vec<usize> = (0..actors).collect();
    let mut sched_rng = match schedule {
        Schedule::Shuffled(s) => Some(ChaCha8Rng::seed_from_u64(s)),
        Schedule::RoundRobin => None,
    };
    while inboxes.iter().any(|q| !q.is_empty()) {
        if let Some(r) = sched_rng.as_mut() {
            order.shuffle(r);
        }
        for &actor in &order {
            let Some(frame) = inboxes[actor].pop_front() else {
                continue;
            };
            let msg = WireMessage::decode(&frame)?;
            if msg.receiver as usize != actor {
                return Err(DecodeError::Unexpected(format!(
                    "frame for {} delivered to {actor}",
                    msg.receiver
                ))
                .into());
            }
            let elements = msg.elements_in(field)?;
            match (actor, msg.kind) {
                (a, MessageKind::InputShares) if (1..=s).contains(&a) && msg.sender == 0 => {
                    let view = ServerView::from_flat(&scheme.params, subsets, a - 1, &elements)
                        .map_err(|e| DecodeError::Unexpected(e.to_string()))?;
                    let z = scheme.eval_server(&view)?;
                    let out = WireMessage::new(field, MessageKind::OutputShares, a as u16, output_id, &z);
                    send(out, &mut inboxes, &mut transcript);
                }
                (a, MessageKind::OutputShares) if a == s + 1 && (1..=s).contains(&(msg.sender as usize)) => {
                    if received.insert(msg.sender as usize - 1, elements).is_some() {
                        return Err(DecodeError::Unexpected(format!("duplicate output from {}", msg.sender)).into());
                    }
                    if received.len() == s {
                        let per_server: Vec<Vec<Fe>> = received.values().cloned().collect();
                        let z = scheme.assemble(&per_server)?;
                        let outputs = scheme.reconstruct(&z)?;
                        let msg = WireMessage::new(field, MessageKind::Result, output_id, 0, &outputs);
                        send(msg, &mut inboxes, &mut transcript);
                    }
                }
                (0, MessageKind::Result) if msg.sender == output_id => {
                    result = Some(elements);
                }
                (a, k) => {
                    return Err(DecodeError::Unexpected(format!(
                        "actor {a} cannot handle {k:?} from {}",
                        msg.sender
                    ))
                    .into())
                }
            }
        }
    }
    let outputs = result.ok_or_else(|| DecodeError::Unexpected("no result reached the input client".into()))?;
    let per_server: Vec<Vec<Fe>> = received.into_values().collect();
    let z = scheme.assemble(&per_server)?;
    Ok(Simulation { transcript, outputs, z })
}

/// Outcome of checking a recorded transcript against a scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay {
    pub outputs: Vec<Fe>,
    pub frames: usize,
    /// Servers whose recorded output share differs from a fresh evaluation (1-based ids).
    pub mismatched_servers: Vec<u16>,
    pub result_consistent: bool,
}

impl Replay {
    pub fn consistent(&self) -> bool {
        self.mismatched_servers.is_empty() && self.result_consistent
    }
}

/// Re-evaluates every server on its recorded input and re-reconstructs.
pub fn replay(scheme: &HssScheme, frames: &[Vec<u8>]) -> Result<Replay> {
    let field = scheme.field();
    let s = scheme.params.s;
    let mut inputs: BTreeMap<u16, Vec<Fe>> = BTreeMap::new();
    let mut outputs: BTreeMap<u16, Vec<Fe>> = BTreeMap::new();
    let mut result = None;
    for frame in frames {
        let msg = WireMessage::decode(frame)?;
        let els = msg.elements_in(field)?;
        match msg.kind {
            MessageKind::InputShares => inputs.insert(msg.receiver, els),
            MessageKind::OutputShares => outputs.insert(msg.sender, els),
            MessageKind::Result => result.replace(els),
        };
    }
    let mut mismatched = Vec::new();
    let mut per_server = Vec::with_capacity(s);
    for j in 1..=s as u16 {
        let input = inputs
            .get(&j)
            .ok_or_else(|| DecodeError::Unexpected(format!("no input shares for server {j}")))?;
        let view = ServerView::from_flat(&scheme.params, &scheme.monomials.subsets, j as usize - 1, input)?;
        let fresh = scheme.eval_server(&view)?;
        if outputs.get(&j) != Some(&fresh) {
            mismatched.push(j);
        }
        per_server.push(fresh);
    }
    let recomputed = scheme.reconstruct(&scheme.assemble(&per_server)?)?;
    let result_consistent = result.as_ref() == Some(&recomputed);
    Ok(Replay { outputs: recomputed, frames: frames.len(), mismatched_servers: mismatched, result_consistent })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_result_frame_is_eleven_bytes() {
        let f = Field::prime(2).unwrap();
        let m = WireMessage::new(&f, MessageKind::Result, 3, 0, &[]);
        let bytes = m.encode();
        assert_eq!(bytes.len(), 11);
        assert_eq!(WireMessage::decode(&bytes).unwrap(), m);
    }

    #[test]
    fn element_encodings() {
        let f2 = Field::prime(2).unwrap();
        let m = WireMessage::new(&f2, MessageKind::OutputShares, 1, 3, &[Fe(1)]);
        assert_eq!(&m.encode()[HEADER_LEN..], &[0x01]);
        let f4 = Field::new(2, 2).unwrap();
        let e = f4.from_coefficients(&[1, 1]).unwrap();
        let m = WireMessage::new(&f4, MessageKind::OutputShares, 1, 3, &[e]);
        assert_eq!(&m.encode()[HEADER_LEN..], &[0x03]);
        let f512 = Field::binary(9).unwrap();
        let m = WireMessage::new(&f512, MessageKind::OutputShares, 1, 3, &[Fe(0x1ab)]);
        assert_eq!(&m.encode()[HEADER_LEN..], &[0xab, 0x01]);
    }

    #[test]
    fn malformed_frames() {
        let f = Field::prime(3).unwrap();
        let good = WireMessage::new(&f, MessageKind::InputShares, 0, 1, &[Fe(2), Fe(1)]).encode();
        let mut bad = good.clone();
        bad[0] = 2;
        assert_eq!(WireMessage::decode(&bad), Err(DecodeError::BadVersion(2)));
        let mut bad = good.clone();
        bad[1] = 9;
        assert_eq!(WireMessage::decode(&bad), Err(DecodeError::BadKind(9)));
        assert!(matches!(WireMessage::decode(&good[..good.len() - 1]), Err(DecodeError::Truncated { .. })));
        let mut long = good.clone();
        long.push(0);
        assert!(matches!(WireMessage::decode(&long), Err(DecodeError::LengthMismatch { .. })));
        let mut wide = good.clone();
        wide[HEADER_LEN] = 7;
        let m = WireMessage::decode(&wide).unwrap();
        assert_eq!(m.elements_in(&f), Err(DecodeError::ElementOutOfRange { value: 7, order: 3 }));
    }

    #[test]
    fn dump_round_trip() {
        let t = Transcript { frames: vec![vec![1, 3, 1, 0xff], vec![]], ..Transcript::default() };
        assert_eq!(Transcript::parse_dump(&t.dump()).unwrap(), vec![vec![1, 3, 1, 0xff]]);
        assert!(Transcript::parse_dump("nope\n").is_err());
        assert!(Transcript::parse_dump(&format!("{TRANSCRIPT_TAG}\nzz\n")).is_err());
    }
}
