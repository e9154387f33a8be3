//! Text formats: PD codes, signed Gauss codes and braid words.
//!
//! PD: `X[i,j,k,l]` lists arc labels counterclockwise starting from the
//! incoming under-strand, so the over-strand sits on slots 1 and 3. `F[...]`
//! is a flat crossing whose `+` resolution is the `X` with the same labels.
//! A bare `O` is a crossingless circle. Items may be separated by
//! whitespace or commas and optionally wrapped in `PD[...]`.
//!
//! Gauss: one component per line (or `;`-separated), tokens like `O1+` /
//! `U2-` giving over/under passage and crossing sign.
//!
//! Braid: `s1 s2^-1 …`, closed up. Generator `s_i` crosses positions `i`
//! and `i+1` positively.

use std::collections::BTreeMap;

use super::{half_edge, DiagramError, FramedDiagram, OverPair, SingularDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Pd,
    Gauss,
    Braid,
}

impl std::str::FromStr for InputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "pd" => Ok(Self::Pd),
            "gauss" => Ok(Self::Gauss),
            "braid" => Ok(Self::Braid),
            other => Err(format!("unknown format {other:?} (expected pd, gauss or braid)")),
        }
    }
}

/// Parses a framed (non-singular) diagram.
pub fn parse_diagram(text: &str, format: InputFormat) -> Result<FramedDiagram, DiagramError> {
    let sd = parse_singular(text, format)?;
    if let Some(&c) = sd.flat_crossings().first() {
        return Err(DiagramError::FlatCrossing(c));
    }
    Ok(sd.into_base())
}

/// Parses a diagram that may contain flat crossings (PD `F[...]` entries).
pub fn parse_singular(text: &str, format: InputFormat) -> Result<SingularDiagram, DiagramError> {
    match format {
        InputFormat::Pd => parse_pd(text),
        InputFormat::Gauss => parse_gauss(text).map(SingularDiagram::from_framed),
        InputFormat::Braid => parse_braid(text).map(SingularDiagram::from_framed),
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self { text, pos: 0 }
    }

    fn error(&self, pos: usize, msg: impl Into<String>) -> DiagramError {
        let before = &self.text[..pos.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        DiagramError::Syntax { line, col, msg: msg.into() }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_separators(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() || c == ',' {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn expect(&mut self, want: char) -> Result<(), DiagramError> {
        self.skip_ws();
        let at = self.pos;
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(self.error(at, format!("expected {want:?}, found {c:?}"))),
            None => Err(self.error(at, format!("expected {want:?}, found end of input"))),
        }
    }

    fn integer(&mut self) -> Result<(i64, usize), DiagramError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.bump();
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        self.text[start..self.pos]
            .parse::<i64>()
            .map(|v| (v, start))
            .map_err(|_| self.error(start, "expected an integer"))
    }
}

fn parse_pd(text: &str) -> Result<SingularDiagram, DiagramError> {
    let mut cur = Cursor::new(text);
    let mut entries: Vec<([i64; 4], bool, usize)> = Vec::new();
    let mut free_loops = 0;
    let mut wrapped = false;
    cur.skip_separators();
    if cur.text[cur.pos..].starts_with("PD[") {
        cur.pos += 3;
        wrapped = true;
    }
    loop {
        cur.skip_separators();
        let at = cur.pos;
        match cur.peek() {
            None => {
                if wrapped {
                    return Err(cur.error(at, "unclosed PD[ wrapper"));
                }
                break;
            }
            Some(']') if wrapped => {
                cur.bump();
                cur.skip_separators();
                if cur.peek().is_some() {
                    return Err(cur.error(cur.pos, "trailing input after PD[...]"));
                }
                break;
            }
            Some(c @ ('X' | 'F')) => {
                cur.bump();
                cur.expect('[')?;
                let mut labels = [0i64; 4];
                for (k, slot) in labels.iter_mut().enumerate() {
                    if k > 0 {
                        cur.expect(',')?;
                    }
                    *slot = cur.integer()?.0;
                }
                cur.expect(']')?;
                entries.push((labels, c == 'F', at));
            }
            Some('O') => {
                cur.bump();
                if cur.text[cur.pos..].starts_with("[]") {
                    cur.pos += 2;
                }
                free_loops += 1;
            }
            Some(c) => return Err(cur.error(at, format!("unexpected character {c:?}"))),
        }
    }

    let mut occurrences: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (c, (labels, _, _)) in entries.iter().enumerate() {
        for (s, &l) in labels.iter().enumerate() {
            occurrences.entry(l).or_default().push(half_edge(c, s));
        }
    }
    let mut partner = vec![usize::MAX; 4 * entries.len()];
    for (label, hs) in &occurrences {
        if hs.len() != 2 {
            let at = entries[hs[0] / 4].2;
            return Err(cur.error(
                at,
                format!("arc label {label} appears {} time(s); every arc needs exactly two ends", hs.len()),
            ));
        }
        partner[hs[0]] = hs[1];
        partner[hs[1]] = hs[0];
    }
    let over = vec![OverPair::Odd; entries.len()];
    let flat: Vec<bool> = entries.iter().map(|e| e.1).collect();
    let base = FramedDiagram::new(over, partner, free_loops)?;
    Ok(SingularDiagram::new(base, flat))
}

fn parse_gauss(text: &str) -> Result<FramedDiagram, DiagramError> {
    let cur = Cursor::new(text);
    // crossing id -> (over visit, under visit, sign); visit = (component, index)
    struct Visit {
        over: bool,
        sign: i32,
        at: usize,
    }
    let mut comps: Vec<Vec<(i64, Visit)>> = Vec::new();
    let mut offset = 0;
    for raw_line in text.split(['\n', ';']) {
        let line_start = offset;
        offset += raw_line.len() + 1;
        let line = raw_line.split('#').next().unwrap_or("");
        let mut visits = Vec::new();
        let mut pos = 0;
        for tok in line.split(|c: char| c.is_whitespace() || c == ',') {
            let tok_at = line_start + line[pos..].find(tok).map_or(pos, |k| k + pos);
            pos = tok_at - line_start + tok.len();
            if tok.is_empty() {
                continue;
            }
            let mut chars = tok.chars();
            let over = match chars.next() {
                Some('O' | 'o') => true,
                Some('U' | 'u') => false,
                _ => return Err(cur.error(tok_at, format!("bad Gauss token {tok:?}"))),
            };
            let rest = chars.as_str();
            let (num, sign) = match rest.strip_suffix('+') {
                Some(n) => (n, 1),
                None => match rest.strip_suffix('-') {
                    Some(n) => (n, -1),
                    None => return Err(cur.error(tok_at, format!("Gauss token {tok:?} lacks a sign"))),
                },
            };
            let id: i64 = num.parse().map_err(|_| cur.error(tok_at, format!("bad crossing id in {tok:?}")))?;
            visits.push((id, Visit { over, sign, at: tok_at }));
        }
        if !visits.is_empty() {
            comps.push(visits);
        }
    }
    if comps.is_empty() {
        return Err(cur.error(0, "empty Gauss code"));
    }

    let mut index: BTreeMap<i64, usize> = BTreeMap::new();
    let mut seen: Vec<(Option<usize>, Option<usize>, i32)> = Vec::new();
    let mut flat_visits = Vec::new();
    for comp in &comps {
        for (id, v) in comp {
            let next = index.len();
            let c = *index.entry(*id).or_insert(next);
            if c == seen.len() {
                seen.push((None, None, v.sign));
            }
            let entry = &mut seen[c];
            if entry.2 != v.sign {
                return Err(cur.error(v.at, format!("crossing {id} has inconsistent signs")));
            }
            let slot = if v.over { &mut entry.0 } else { &mut entry.1 };
            if slot.is_some() {
                return Err(cur.error(v.at, format!("crossing {id} is passed {} twice", if v.over { "over" } else { "under" })));
            }
            *slot = Some(flat_visits.len());
            flat_visits.push((c, v.over, v.sign));
        }
    }
    for (id, &c) in &index {
        if seen[c].0.is_none() || seen[c].1.is_none() {
            return Err(DiagramError::Connectivity(format!("crossing {id} must be visited once over and once under")));
        }
    }
    // Positive: under enters slot 0 (leaves 2), over enters 1 (leaves 3).
    // Negative: over enters 3 (leaves 1).
    let slots = |over: bool, sign: i32| -> (usize, usize) {
        match (over, sign > 0) {
            (false, _) => (0, 2),
            (true, true) => (1, 3),
            (true, false) => (3, 1),
        }
    };
    let mut partner = vec![usize::MAX; 4 * index.len()];
    let mut k = 0;
    for comp in &comps {
        let len = comp.len();
        for i in 0..len {
            let (c, over, sign) = flat_visits[k + i];
            let (nc, nover, nsign) = flat_visits[k + (i + 1) % len];
            let exit = half_edge(c, slots(over, sign).1);
            let enter = half_edge(nc, slots(nover, nsign).0);
            partner[exit] = enter;
            partner[enter] = exit;
        }
        k += len;
    }
    FramedDiagram::new(vec![OverPair::Odd; index.len()], partner, 0)
}

fn parse_braid(text: &str) -> Result<FramedDiagram, DiagramError> {
    let cur = Cursor::new(text);
    let mut word: Vec<(usize, bool)> = Vec::new();
    let mut pos = 0;
    for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
        let at = text[pos..].find(tok).map_or(pos, |k| k + pos);
        pos = at + tok.len();
        if tok.is_empty() {
            continue;
        }
        let body = tok
            .strip_prefix('s')
            .or_else(|| tok.strip_prefix('σ'))
            .ok_or_else(|| cur.error(at, format!("bad braid generator {tok:?}")))?;
        let (idx, positive) = match body.split_once('^') {
            Some((i, "-1")) => (i, false),
            Some((i, "1")) => (i, true),
            Some(_) => return Err(cur.error(at, format!("exponent must be 1 or -1 in {tok:?}"))),
            None => (body, true),
        };
        let i: usize = idx.parse().map_err(|_| cur.error(at, format!("bad generator index in {tok:?}")))?;
        if i == 0 {
            return Err(cur.error(at, "generator indices start at 1"));
        }
        word.push((i - 1, positive));
    }
    if word.is_empty() {
        return Err(cur.error(0, "empty braid word"));
    }
    let strands = word.iter().map(|&(i, _)| i + 2).max().unwrap_or(1);
    Ok(braid_closure(strands, &word))
}

/// Closes a braid word of `(position, positive)` generators on `strands`
/// strands. Slots at each crossing are bottom-left, bottom-right, top-right,
/// top-left; strands run upward.
pub(crate) fn braid_closure(strands: usize, word: &[(usize, bool)]) -> FramedDiagram {
    let mut partner = vec![usize::MAX; 4 * word.len()];
    let mut over = Vec::with_capacity(word.len());
    let mut pending: Vec<Option<usize>> = vec![None; strands];
    let mut first: Vec<Option<usize>> = vec![None; strands];
    let mut connect = |pos: usize, enter: usize, pending: &mut Vec<Option<usize>>, partner: &mut Vec<usize>| {
        match pending[pos] {
            Some(e) => {
                partner[e] = enter;
                partner[enter] = e;
            }
            None => first[pos] = Some(enter),
        }
    };
    for (c, &(i, positive)) in word.iter().enumerate() {
        connect(i, half_edge(c, 0), &mut pending, &mut partner);
        connect(i + 1, half_edge(c, 1), &mut pending, &mut partner);
        pending[i] = Some(half_edge(c, 3));
        pending[i + 1] = Some(half_edge(c, 2));
        // Over entering at slot 1 with under at slot 0 is a positive crossing.
        over.push(if positive { OverPair::Odd } else { OverPair::Even });
    }
    let mut loops = 0;
    for pos in 0..strands {
        match (pending[pos], first[pos]) {
            (Some(e), Some(f)) => {
                partner[e] = f;
                partner[f] = e;
            }
            _ => loops += 1,
        }
    }
    FramedDiagram::from_parts_unchecked(over, partner, loops)
}

impl FramedDiagram {
    /// PD text: one `X[...]` per line, arcs numbered along the traversal,
    /// then one `O` per free loop.
    pub fn to_pd(&self) -> String {
        SingularDiagram::from_framed(self.clone()).to_pd()
    }
}

impl SingularDiagram {
    pub fn to_pd(&self) -> String {
        let d = self.base();
        let mut label = vec![0usize; d.partners().len()];
        let mut next = 1;
        let mut under_in = vec![usize::MAX; d.crossing_count()];
        for comp in d.components() {
            for &h in &comp.visits {
                label[h] = next;
                label[d.partner(h)] = next;
                next += 1;
                if !d.is_over(h) {
                    under_in[h / 4] = h % 4;
                }
            }
        }
        let mut out = String::new();
        for (c, &u) in under_in.iter().enumerate() {
            let tag = if self.is_flat(c) { 'F' } else { 'X' };
            let labels: Vec<String> = (0..4).map(|k| label[half_edge(c, u + k)].to_string()).collect();
            out.push_str(&format!("{tag}[{}]\n", labels.join(",")));
        }
        for _ in 0..d.free_loops() {
            out.push_str("O\n");
        }
        out
    }
}
