//! Cycle codec for parity tuples.
//!
//! A tuple satisfying the even-touch parity conditions forms a 2-regular
//! multigraph: each triple is a vertex with two endpoints, endpoints on the
//! same diagonal are paired, and paired endpoints are edges. The graph
//! decomposes into cycles of length at least two (a triple's endpoints lie
//! on distinct diagonals, so self-loops cannot occur). Each cycle is encoded
//! as one `head` vertex stored explicitly, `mid` vertices that store columns
//! plus a reference to their predecessor, and a `last` vertex that stores
//! only one column; rows are reconstructed from shared diagonals during
//! decoding.
//!
//! Deterministic choices that make the encoding a function: endpoints on a
//! diagonal are sorted by (triple index, left endpoint before right) and
//! paired consecutively; the head of each cycle is its lowest triple index;
//! traversal leaves the head through its right endpoint. Connection bits
//! name the column slot (first or second of the ordered pair), which is what
//! lets decoding restore the exact ordered triple.

use crate::{Error, Result};

/// Two entries `(row, col_a)` and `(row, col_b)` of an `m x s` matrix,
/// `col_a != col_b`. The column pair is ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub row: usize,
    pub col_a: usize,
    pub col_b: usize,
}

impl Triple {
    pub fn diag_a(&self) -> i64 {
        self.col_a as i64 - self.row as i64
    }

    pub fn diag_b(&self) -> i64 {
        self.col_b as i64 - self.row as i64
    }

    /// Column of slot 0 (`col_a`) or slot 1 (`col_b`).
    fn col(&self, slot: u8) -> usize {
        if slot == 0 {
            self.col_a
        } else {
            self.col_b
        }
    }

    fn diag(&self, slot: u8) -> i64 {
        self.col(slot) as i64 - self.row as i64
    }

    /// Slot of the left endpoint (minimum column).
    fn left_slot(&self) -> u8 {
        (self.col_b < self.col_a) as u8
    }

    fn right_slot(&self) -> u8 {
        1 - self.left_slot()
    }
}

/// An ordered sequence of triples; the object counted by the parity
/// enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tuple {
    pub triples: Vec<Triple>,
}

impl Tuple {
    pub fn new(triples: Vec<Triple>) -> Self {
        Tuple { triples }
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Ranges valid, ordered columns distinct, and every column and
    /// diagonal touched an even number of times.
    pub fn satisfies_parity(&self, m: usize, s: usize) -> bool {
        let mut col_par = vec![false; s];
        let mut diag_par = vec![false; m + s - 1];
        for t in &self.triples {
            if t.row >= m || t.col_a >= s || t.col_b >= s || t.col_a == t.col_b {
                return false;
            }
            col_par[t.col_a] ^= true;
            col_par[t.col_b] ^= true;
            diag_par[(t.diag_a() + m as i64 - 1) as usize] ^= true;
            diag_par[(t.diag_b() + m as i64 - 1) as usize] ^= true;
        }
        !col_par.iter().chain(diag_par.iter()).any(|&odd| odd)
    }
}

/// One vertex of a cycle in traversal order. `entry_slot` is absent for the
/// head; `exit_slot` is the endpoint leading to the next vertex (for the
/// last vertex, back to the head's left endpoint).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleStep {
    pub triple: usize,
    pub entry_slot: Option<u8>,
    pub exit_slot: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub cycles: Vec<Vec<CycleStep>>,
}

impl CycleDecomposition {
    pub fn total_vertices(&self) -> usize {
        self.cycles.iter().map(|c| c.len()).sum()
    }
}

type Endpoint = (usize, u8); // (triple index, slot)

fn pair_endpoints(tuple: &Tuple) -> Result<Vec<[Option<Endpoint>; 2]>> {
    use std::collections::BTreeMap;
    let mut by_diag: BTreeMap<i64, Vec<(usize, u8, u8)>> = BTreeMap::new();
    for (idx, t) in tuple.triples.iter().enumerate() {
        for slot in [0u8, 1u8] {
            // Sort key: (triple index, left endpoint before right).
            let right = (slot == t.right_slot()) as u8;
            by_diag.entry(t.diag(slot)).or_default().push((idx, right, slot));
        }
    }
    let mut partner: Vec<[Option<Endpoint>; 2]> = vec![[None, None]; tuple.len()];
    for (diag, mut eps) in by_diag {
        if !eps.len().is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "diagonal {diag} has an odd number of endpoints; tuple violates parity"
            )));
        }
        eps.sort_unstable_by_key(|&(idx, right, _)| (idx, right));
        for pair in eps.chunks_exact(2) {
            let (ia, _, sa) = pair[0];
            let (ib, _, sb) = pair[1];
            partner[ia][sa as usize] = Some((ib, sb));
            partner[ib][sb as usize] = Some((ia, sa));
        }
    }
    Ok(partner)
}

/// Pair endpoints per diagonal and walk the resulting 2-regular multigraph
/// into cycles. Heads are the lowest triple index of each cycle; traversal
/// leaves a head through its right endpoint.
pub fn build_cycles(tuple: &Tuple) -> Result<CycleDecomposition> {
    let partner = pair_endpoints(tuple)?;
    let mut visited = vec![false; tuple.len()];
    let mut cycles = Vec::new();
    for head in 0..tuple.len() {
        if visited[head] {
            continue;
        }
        visited[head] = true;
        let head_exit = tuple.triples[head].right_slot();
        let mut steps = vec![CycleStep {
            triple: head,
            entry_slot: None,
            exit_slot: head_exit,
        }];
        let (mut cur, mut entry) = partner[head][head_exit as usize]
            .expect("paired endpoints are total after parity check");
        while cur != head {
            if visited[cur] {
                return Err(Error::InvalidArgument(
                    "endpoint pairing revisited a triple; tuple is malformed".into(),
                ));
            }
            visited[cur] = true;
            let exit = 1 - entry;
            steps.push(CycleStep {
                triple: cur,
                entry_slot: Some(entry),
                exit_slot: exit,
            });
            let (nxt, nxt_entry) = partner[cur][exit as usize]
                .expect("paired endpoints are total after parity check");
            cur = nxt;
            entry = nxt_entry;
        }
        if steps.len() < 2 {
            return Err(Error::InvalidArgument(
                "cycle of length one; tuple is malformed".into(),
            ));
        }
        cycles.push(steps);
    }
    Ok(CycleDecomposition { cycles })
}

/// Bit string produced by [`codec_encode`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCode {
    pub bytes: Vec<u8>,
    pub bit_len: usize,
    pub m: usize,
    pub s: usize,
    pub k: usize,
}

/// Documented constant of the per-tuple length bound
/// `k lg m + 2k lg s + 2k lg 2k + C_CODE * k` (widths as `ceil(lg .)`).
pub const C_CODE: usize = 8;

/// The length bound every encoding satisfies, in bits.
pub fn code_length_bound(m: usize, s: usize, k: usize) -> usize {
    k * bit_width(m) + 2 * k * bit_width(s) + 2 * k * bit_width(2 * k) + C_CODE * k
}

/// Bits needed to store values `0..n` (`ceil(lg n)`).
fn bit_width(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

#[derive(Default, Clone)]
struct BitBuf {
    bytes: Vec<u8>,
    len: usize,
}

impl BitBuf {
    fn push_bits(&mut self, value: u64, width: usize) {
        debug_assert!(width == 64 || value < (1u64 << width));
        for b in 0..width {
            let bit = ((value >> b) & 1) as u8;
            if self.len.is_multiple_of(8) {
                self.bytes.push(0);
            }
            if bit != 0 {
                *self.bytes.last_mut().unwrap() |= 1 << (self.len % 8);
            }
            self.len += 1;
        }
    }

    fn extend(&mut self, other: &BitBuf) {
        for b in 0..other.len {
            let bit = (other.bytes[b / 8] >> (b % 8)) & 1;
            self.push_bits(bit as u64, 1);
        }
    }
}

struct BitCursor<'a> {
    bytes: &'a [u8],
    len: usize,
    pos: usize,
}

impl<'a> BitCursor<'a> {
    fn read_bits(&mut self, width: usize) -> Result<u64> {
        if self.pos + width > self.len {
            return Err(Error::Decode(format!(
                "bit stream ends at {} but {} bits were requested at {}",
                self.len, width, self.pos
            )));
        }
        let mut v = 0u64;
        for b in 0..width {
            let bit = (self.bytes[self.pos / 8] >> (self.pos % 8)) & 1;
            v |= (bit as u64) << b;
            self.pos += 1;
        }
        Ok(v)
    }
}

const TYPE_HEAD: u64 = 0b00;
const TYPE_MID: u64 = 0b01;
const TYPE_LAST: u64 = 0b10;

/// Encode a parity tuple of length `2k` over an `m x s` grid. Heads store
/// row and both columns; mids store both columns, the predecessor's global
/// triple index and two slot bits; lasts store the predecessor index, two
/// slot bits and the column of the endpoint on the predecessor's diagonal.
/// Encoded triples are concatenated in original tuple order.
pub fn codec_encode(tuple: &Tuple, m: usize, s: usize, k: usize) -> Result<CycleCode> {
    if tuple.len() != 2 * k {
        return Err(Error::InvalidArgument(format!(
            "tuple length {} does not match 2k = {}",
            tuple.len(),
            2 * k
        )));
    }
    if !tuple.satisfies_parity(m, s) {
        return Err(Error::InvalidArgument(
            "tuple violates the parity conditions".into(),
        ));
    }
    let decomposition = build_cycles(tuple)?;
    let wm = bit_width(m);
    let ws = bit_width(s);
    let wk = bit_width(2 * k);

    let mut pieces: Vec<Option<BitBuf>> = vec![None; tuple.len()];
    for cycle in &decomposition.cycles {
        for (pos, step) in cycle.iter().enumerate() {
            let t = tuple.triples[step.triple];
            let mut buf = BitBuf::default();
            if pos == 0 {
                buf.push_bits(TYPE_HEAD, 2);
                buf.push_bits(t.row as u64, wm);
                buf.push_bits(t.col_a as u64, ws);
                buf.push_bits(t.col_b as u64, ws);
            } else {
                let pred = &cycle[pos - 1];
                let entry = step.entry_slot.expect("non-head steps carry an entry slot");
                if pos + 1 < cycle.len() {
                    buf.push_bits(TYPE_MID, 2);
                    buf.push_bits(t.col_a as u64, ws);
                    buf.push_bits(t.col_b as u64, ws);
                    buf.push_bits(pred.triple as u64, wk);
                    buf.push_bits(pred.exit_slot as u64, 1);
                    buf.push_bits(entry as u64, 1);
                } else {
                    buf.push_bits(TYPE_LAST, 2);
                    buf.push_bits(pred.triple as u64, wk);
                    buf.push_bits(pred.exit_slot as u64, 1);
                    buf.push_bits(entry as u64, 1);
                    buf.push_bits(t.col(entry) as u64, ws);
                }
            }
            pieces[step.triple] = Some(buf);
        }
    }

    let mut out = BitBuf::default();
    for piece in pieces {
        out.extend(&piece.expect("every triple lies in exactly one cycle"));
    }
    let code = CycleCode {
        bytes: out.bytes,
        bit_len: out.len,
        m,
        s,
        k,
    };
    debug_assert!(code.bit_len <= code_length_bound(m, s, k));
    Ok(code)
}

#[derive(Debug, Clone, Copy)]
enum Field {
    Head {
        row: usize,
        col_a: usize,
        col_b: usize,
    },
    Mid {
        col_a: usize,
        col_b: usize,
        pred: usize,
        pred_exit: u8,
        entry: u8,
    },
    Last {
        pred: usize,
        pred_exit: u8,
        entry: u8,
        entry_col: usize,
    },
}

/// Decode a [`CycleCode`] back to the exact original tuple.
pub fn codec_decode(code: &CycleCode) -> Result<Tuple> {
    let (m, s, k) = (code.m, code.s, code.k);
    let count = 2 * k;
    let wm = bit_width(m);
    let ws = bit_width(s);
    let wk = bit_width(2 * k);
    let mut cursor = BitCursor {
        bytes: &code.bytes,
        len: code.bit_len,
        pos: 0,
    };

    // Pass 1: split the stream into per-triple fields by type tag.
    let mut fields = Vec::with_capacity(count);
    for _ in 0..count {
        let ty = cursor.read_bits(2)?;
        let field = match ty {
            TYPE_HEAD => Field::Head {
                row: cursor.read_bits(wm)? as usize,
                col_a: cursor.read_bits(ws)? as usize,
                col_b: cursor.read_bits(ws)? as usize,
            },
            TYPE_MID => Field::Mid {
                col_a: cursor.read_bits(ws)? as usize,
                col_b: cursor.read_bits(ws)? as usize,
                pred: cursor.read_bits(wk)? as usize,
                pred_exit: cursor.read_bits(1)? as u8,
                entry: cursor.read_bits(1)? as u8,
            },
            TYPE_LAST => Field::Last {
                pred: cursor.read_bits(wk)? as usize,
                pred_exit: cursor.read_bits(1)? as u8,
                entry: cursor.read_bits(1)? as u8,
                entry_col: cursor.read_bits(ws)? as usize,
            },
            other => {
                return Err(Error::Decode(format!("unknown type tag {other:#04b}")));
            }
        };
        fields.push(field);
    }
    if cursor.pos != cursor.len {
        return Err(Error::Decode(format!(
            "{} trailing bits after {} triples",
            cursor.len - cursor.pos,
            count
        )));
    }

    // Successor of each referenced predecessor.
    let mut successor: Vec<Option<usize>> = vec![None; count];
    for (idx, field) in fields.iter().enumerate() {
        let pred = match field {
            Field::Mid { pred, .. } | Field::Last { pred, .. } => *pred,
            Field::Head { .. } => continue,
        };
        if pred >= count {
            return Err(Error::Decode(format!(
                "predecessor index {pred} out of range for {count} triples"
            )));
        }
        if successor[pred].replace(idx).is_some() {
            return Err(Error::Decode(format!(
                "triple {pred} is referenced as predecessor twice"
            )));
        }
    }

    // Pass 2: walk each cycle from its head, computing rows from shared
    // diagonals, then restore original order (fields are already stored in
    // it).
    let mut triples: Vec<Option<Triple>> = vec![None; count];
    for idx in 0..count {
        let Field::Head { row, col_a, col_b } = fields[idx] else {
            continue;
        };
        if row >= m || col_a >= s || col_b >= s || col_a == col_b {
            return Err(Error::Decode(format!("head {idx} is out of range")));
        }
        let head_triple = Triple { row, col_a, col_b };
        triples[idx] = Some(head_triple);
        let mut cur = idx;
        loop {
            let nxt = successor[cur].ok_or_else(|| {
                Error::Decode(format!("triple {cur} has no successor in its cycle"))
            })?;
            let cur_triple = triples[cur].expect("walk order decodes predecessors first");
            match fields[nxt] {
                Field::Head { .. } => {
                    return Err(Error::Decode(format!(
                        "head {nxt} is referenced as a successor"
                    )));
                }
                Field::Mid {
                    col_a,
                    col_b,
                    pred_exit,
                    entry,
                    ..
                } => {
                    if col_a >= s || col_b >= s || col_a == col_b {
                        return Err(Error::Decode(format!("mid {nxt} is out of range")));
                    }
                    let shared_diag = cur_triple.diag(pred_exit);
                    let entry_col = if entry == 0 { col_a } else { col_b };
                    let row = entry_col as i64 - shared_diag;
                    if row < 0 || row >= m as i64 {
                        return Err(Error::Decode(format!(
                            "mid {nxt} decodes to row {row} outside 0..{m}"
                        )));
                    }
                    triples[nxt] = Some(Triple {
                        row: row as usize,
                        col_a,
                        col_b,
                    });
                    cur = nxt;
                }
                Field::Last {
                    pred_exit,
                    entry,
                    entry_col,
                    ..
                } => {
                    if entry_col >= s {
                        return Err(Error::Decode(format!("last {nxt} is out of range")));
                    }
                    let shared_diag = cur_triple.diag(pred_exit);
                    let row = entry_col as i64 - shared_diag;
                    // The other endpoint closes the cycle on the head's
                    // left-endpoint diagonal.
                    let back_diag = head_triple.diag(head_triple.left_slot());
                    let other_col = row + back_diag;
                    if row < 0
                        || row >= m as i64
                        || other_col < 0
                        || other_col >= s as i64
                        || other_col as usize == entry_col
                    {
                        return Err(Error::Decode(format!(
                            "last {nxt} decodes outside the grid (row {row}, column {other_col})"
                        )));
                    }
                    let (col_a, col_b) = if entry == 0 {
                        (entry_col, other_col as usize)
                    } else {
                        (other_col as usize, entry_col)
                    };
                    triples[nxt] = Some(Triple {
                        row: row as usize,
                        col_a,
                        col_b,
                    });
                    break;
                }
            }
        }
    }

    let triples: Vec<Triple> = triples
        .into_iter()
        .enumerate()
        .map(|(idx, t)| t.ok_or_else(|| Error::Decode(format!("triple {idx} was never decoded"))))
        .collect::<Result<_>>()?;
    Ok(Tuple::new(triples))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(row: usize, col_a: usize, col_b: usize) -> Triple {
        Triple { row, col_a, col_b }
    }

    /// The written-out two-cycle: both triples on row 0 of a 2x2 grid.
    fn two_cycle_tuple() -> Tuple {
        Tuple::new(vec![t(0, 0, 1), t(0, 1, 0)])
    }

    /// An explicit 4-cycle in a 4x4 grid: consecutive triples share exactly
    /// one diagonal (1, -2, -1 and back to the head via 0).
    fn four_cycle_tuple() -> Tuple {
        Tuple::new(vec![t(0, 0, 1), t(2, 3, 0), t(3, 1, 2), t(3, 2, 3)])
    }

    #[test]
    fn two_cycle_structure() {
        let tuple = two_cycle_tuple();
        assert!(tuple.satisfies_parity(2, 2));
        let dec = build_cycles(&tuple).unwrap();
        assert_eq!(dec.cycles.len(), 1);
        assert_eq!(dec.cycles[0].len(), 2);
        assert_eq!(dec.total_vertices(), 2);
    }

    #[test]
    fn four_cycle_structure() {
        let tuple = four_cycle_tuple();
        assert!(tuple.satisfies_parity(4, 4));
        let dec = build_cycles(&tuple).unwrap();
        assert_eq!(dec.cycles.len(), 1);
        assert_eq!(dec.cycles[0].len(), 4);
    }

    #[test]
    fn every_vertex_in_exactly_one_cycle() {
        let tuple = four_cycle_tuple();
        let dec = build_cycles(&tuple).unwrap();
        let mut seen = vec![0usize; tuple.len()];
        for cycle in &dec.cycles {
            for step in cycle {
                seen[step.triple] += 1;
            }
        }
        assert!(seen.iter().all(|&c| c == 1));
    }

    #[test]
    fn parity_violation_rejected() {
        let bad = Tuple::new(vec![t(0, 0, 1)]);
        assert!(build_cycles(&bad).is_err());
        assert!(codec_encode(&bad, 2, 2, 1).is_err());
    }

    #[test]
    fn roundtrip_two_cycle() {
        let tuple = two_cycle_tuple();
        let code = codec_encode(&tuple, 2, 2, 1).unwrap();
        assert_eq!(codec_decode(&code).unwrap(), tuple);
    }

    #[test]
    fn roundtrip_four_cycle_all_orders() {
        // All 24 orderings of the 4-cycle tuple keep parity and must
        // round-trip, exercising mid decoding and order restoration.
        let base = four_cycle_tuple().triples;
        let mut count = 0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let idxs = [a, b, c, d];
                        let mut sorted = idxs;
                        sorted.sort_unstable();
                        if sorted != [0, 1, 2, 3] {
                            continue;
                        }
                        let tuple = Tuple::new(idxs.iter().map(|&i| base[i]).collect());
                        let code = codec_encode(&tuple, 4, 4, 2).unwrap();
                        let back = codec_decode(&code).unwrap();
                        assert_eq!(back, tuple, "order {idxs:?}");
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 24);
    }

    #[test]
    fn length_bound_holds_for_explicit_tuples() {
        let cases = [
            (two_cycle_tuple(), 2usize, 2usize, 1usize),
            (four_cycle_tuple(), 4, 4, 2),
        ];
        for (tuple, m, s, k) in cases {
            let code = codec_encode(&tuple, m, s, k).unwrap();
            assert!(
                code.bit_len <= code_length_bound(m, s, k),
                "{} bits over bound {} at (m={m}, s={s}, k={k})",
                code.bit_len,
                code_length_bound(m, s, k)
            );
        }
    }

    #[test]
    fn decode_rejects_malformed_streams() {
        let tuple = two_cycle_tuple();
        let code = codec_encode(&tuple, 2, 2, 1).unwrap();
        // Truncated stream.
        let mut short = code.clone();
        short.bit_len -= 3;
        assert!(codec_decode(&short).is_err());
        // Unknown type tag 11 at the front.
        let mut bad = code.clone();
        bad.bytes[0] |= 0b11;
        assert!(codec_decode(&bad).is_err());
    }

    #[test]
    fn bit_width_values() {
        assert_eq!(bit_width(1), 0);
        assert_eq!(bit_width(2), 1);
        assert_eq!(bit_width(3), 2);
        assert_eq!(bit_width(4), 2);
        assert_eq!(bit_width(5), 3);
        assert_eq!(bit_width(16), 4);
    }
}
