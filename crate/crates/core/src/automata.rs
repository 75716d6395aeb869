//! Compilation of a pattern into the recognition automaton for `Σ*·R` and
//! its m-disambiguated form.
//!
//! The pipeline is the classical one: Thompson construction to an NFA,
//! subset construction to a total DFA, then iterative state duplication
//! until every state reachable by at least `m` events determines the last
//! `m` symbols read. The duplication is what lets a Markov chain over the
//! states carry m-order conditional probabilities.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::pattern::{validate_ast, Alphabet, PatternAst, SymbolId};

/// Index of a DFA or NFA state.
pub type StateId = usize;

/// Nondeterministic automaton with ε-transitions.
///
/// Built by [`build_nfa`]; carries its alphabet so that determinization
/// needs no extra arguments.
#[derive(Debug, Clone)]
pub struct Nfa {
    alphabet: Alphabet,
    /// Per state: outgoing edges labeled with a symbol or ε (`None`).
    transitions: Vec<Vec<(Option<SymbolId>, StateId)>>,
    start: StateId,
    finals: BTreeSet<StateId>,
}

impl Nfa {
    pub fn num_states(&self) -> usize {
        self.transitions.len()
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn closure_into(&self, set: &mut BTreeSet<StateId>) {
        let mut stack: Vec<StateId> = set.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &(label, t) in &self.transitions[s] {
                if label.is_none() && set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }

    /// Whether the automaton accepts the given symbol sequence.
    pub fn accepts(&self, input: &[SymbolId]) -> bool {
        let mut current = BTreeSet::from([self.start]);
        self.closure_into(&mut current);
        for &sym in input {
            let mut next = BTreeSet::new();
            for &s in &current {
                for &(label, t) in &self.transitions[s] {
                    if label == Some(sym) {
                        next.insert(t);
                    }
                }
            }
            self.closure_into(&mut next);
            current = next;
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|s| self.finals.contains(s))
    }
}

/// Deterministic automaton with a total transition function.
///
/// States are numbered `0..num_states` with the start state at 0. When
/// `order > 0` every state carries the suffix of symbols it determines
/// (shorter than `order` only for states reachable solely by short input
/// prefixes) and a link to the state it duplicates.
#[derive(Debug, Clone, PartialEq)]
pub struct Dfa {
    alphabet: Alphabet,
    /// Row-major transition table: `delta[state * |Σ| + symbol]`.
    delta: Vec<StateId>,
    finals: Vec<bool>,
    order: usize,
    suffix_tags: Vec<Vec<SymbolId>>,
    origin: Vec<StateId>,
}

impl Dfa {
    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn start(&self) -> StateId {
        0
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Disambiguation order `m` this automaton was built for.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Constant-time transition lookup.
    #[inline]
    pub fn step(&self, state: StateId, sym: SymbolId) -> StateId {
        self.delta[state * self.alphabet.len() + sym]
    }

    /// Transition lookup by symbol name; fails on symbols outside Σ.
    pub fn step_named(&self, state: StateId, symbol: &str) -> Result<StateId> {
        let sym = self
            .alphabet
            .id_of(symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))?;
        Ok(self.step(state, sym))
    }

    #[inline]
    pub fn is_final(&self, state: StateId) -> bool {
        self.finals[state]
    }

    pub fn final_states(&self) -> Vec<StateId> {
        (0..self.num_states()).filter(|&s| self.finals[s]).collect()
    }

    pub fn nonfinal_states(&self) -> Vec<StateId> {
        (0..self.num_states()).filter(|&s| !self.finals[s]).collect()
    }

    /// The determined length-≤m reaching suffix of a state (empty for m = 0).
    pub fn suffix_tag(&self, state: StateId) -> &[SymbolId] {
        &self.suffix_tags[state]
    }

    /// The pre-duplication state this state copies (identity for m = 0).
    pub fn origin_of(&self, state: StateId) -> StateId {
        self.origin[state]
    }

    /// Human-readable state label: the origin id, plus the determined
    /// suffix for duplicated automata, e.g. `0_b` or `2_b.c`.
    pub fn state_label(&self, state: StateId) -> String {
        let tag = &self.suffix_tags[state];
        if self.order == 0 || tag.is_empty() {
            format!("{}", self.origin[state])
        } else {
            let parts: Vec<&str> = tag.iter().map(|&s| self.alphabet.name(s)).collect();
            format!("{}_{}", self.origin[state], parts.join("."))
        }
    }

    /// Distinct successor states of `state`, in ascending order.
    pub fn successors(&self, state: StateId) -> BTreeSet<StateId> {
        (0..self.alphabet.len())
            .map(|sym| self.step(state, sym))
            .collect()
    }

    /// Whether the automaton accepts the given symbol sequence.
    pub fn accepts(&self, input: &[SymbolId]) -> bool {
        let mut state = self.start();
        for &sym in input {
            state = self.step(state, sym);
        }
        self.is_final(state)
    }

    /// Groups states by their origin, ascending; used for duplicate-cluster
    /// reporting.
    pub fn origin_clusters(&self) -> BTreeMap<StateId, Vec<StateId>> {
        let mut clusters: BTreeMap<StateId, Vec<StateId>> = BTreeMap::new();
        for s in 0..self.num_states() {
            clusters.entry(self.origin[s]).or_default().push(s);
        }
        clusters
    }

    /// Rebuilds the automaton from parts; used by model deserialization.
    pub(crate) fn from_parts(
        alphabet: Alphabet,
        delta: Vec<StateId>,
        finals: Vec<bool>,
        order: usize,
        suffix_tags: Vec<Vec<SymbolId>>,
        origin: Vec<StateId>,
    ) -> Result<Self> {
        let n = finals.len();
        if n == 0 {
            return Err(Error::Model("automaton has no states".into()));
        }
        if delta.len() != n * alphabet.len() {
            return Err(Error::Model(format!(
                "transition table has {} entries, expected {}",
                delta.len(),
                n * alphabet.len()
            )));
        }
        if delta.iter().any(|&t| t >= n) {
            return Err(Error::Model("transition target out of range".into()));
        }
        if suffix_tags.len() != n || origin.len() != n {
            return Err(Error::Model("state annotation lengths disagree".into()));
        }
        if suffix_tags.iter().any(|t| t.len() > order)
            || suffix_tags
                .iter()
                .any(|t| t.iter().any(|&s| s >= alphabet.len()))
        {
            return Err(Error::Model("invalid suffix tag".into()));
        }
        if origin.iter().any(|&o| o >= n) {
            return Err(Error::Model("origin out of range".into()));
        }
        Ok(Self {
            alphabet,
            delta,
            finals,
            order,
            suffix_tags,
            origin,
        })
    }

    pub(crate) fn delta_row(&self, state: StateId) -> &[StateId] {
        let w = self.alphabet.len();
        &self.delta[state * w..(state + 1) * w]
    }
}

/// Returns the AST of `Σ*·R`: any prefix of irrelevant events followed by
/// the pattern itself, so the automaton recognizes every string ending
/// with a match.
pub fn prefix_any(ast: &PatternAst, alphabet: &Alphabet) -> PatternAst {
    let mut union: Option<PatternAst> = None;
    for name in alphabet.symbols().iter().rev() {
        let sym = PatternAst::symbol(name.clone());
        union = Some(match union {
            None => sym,
            Some(rest) => PatternAst::union(sym, rest),
        });
    }
    let sigma = union.expect("alphabet is non-empty");
    PatternAst::concat(PatternAst::star(sigma), ast.clone())
}

/// Thompson construction: one start and one accepting state per fragment.
pub fn build_nfa(ast: &PatternAst, alphabet: &Alphabet) -> Result<Nfa> {
    validate_ast(ast, alphabet)?;
    let mut builder = NfaBuilder::default();
    let (start, accept) = builder.fragment(ast, alphabet);
    Ok(Nfa {
        alphabet: alphabet.clone(),
        transitions: builder.transitions,
        start,
        finals: BTreeSet::from([accept]),
    })
}

#[derive(Default)]
struct NfaBuilder {
    transitions: Vec<Vec<(Option<SymbolId>, StateId)>>,
}

impl NfaBuilder {
    fn state(&mut self) -> StateId {
        self.transitions.push(Vec::new());
        self.transitions.len() - 1
    }

    fn edge(&mut self, from: StateId, label: Option<SymbolId>, to: StateId) {
        self.transitions[from].push((label, to));
    }

    fn fragment(&mut self, ast: &PatternAst, alphabet: &Alphabet) -> (StateId, StateId) {
        match ast {
            PatternAst::Epsilon => {
                let s = self.state();
                let t = self.state();
                self.edge(s, None, t);
                (s, t)
            }
            PatternAst::Symbol(name) => {
                let sym = alphabet.id_of(name).expect("validated symbol");
                let s = self.state();
                let t = self.state();
                self.edge(s, Some(sym), t);
                (s, t)
            }
            PatternAst::Union(l, r) => {
                let (ls, lt) = self.fragment(l, alphabet);
                let (rs, rt) = self.fragment(r, alphabet);
                let s = self.state();
                let t = self.state();
                self.edge(s, None, ls);
                self.edge(s, None, rs);
                self.edge(lt, None, t);
                self.edge(rt, None, t);
                (s, t)
            }
            PatternAst::Concat(l, r) => {
                let (ls, lt) = self.fragment(l, alphabet);
                let (rs, rt) = self.fragment(r, alphabet);
                self.edge(lt, None, rs);
                (ls, rt)
            }
            PatternAst::Star(c) => {
                let (cs, ct) = self.fragment(c, alphabet);
                let s = self.state();
                let t = self.state();
                self.edge(s, None, cs);
                self.edge(s, None, t);
                self.edge(ct, None, cs);
                self.edge(ct, None, t);
                (s, t)
            }
        }
    }
}

/// Subset construction with unreachable-state pruning.
///
/// States are numbered breadth-first from the start state, expanding
/// symbols in alphabet order, so compiled automata are reproducible.
/// An empty move set becomes an ordinary (dead) state, keeping the
/// transition function total for arbitrary input NFAs.
pub fn determinize(nfa: &Nfa) -> Dfa {
    let width = nfa.alphabet.len();
    let mut start = BTreeSet::from([nfa.start]);
    nfa.closure_into(&mut start);

    let mut ids: HashMap<BTreeSet<StateId>, StateId> = HashMap::new();
    let mut subsets: Vec<BTreeSet<StateId>> = Vec::new();
    let mut delta: Vec<StateId> = Vec::new();
    let mut queue = VecDeque::new();

    ids.insert(start.clone(), 0);
    subsets.push(start);
    queue.push_back(0);

    while let Some(id) = queue.pop_front() {
        let subset = subsets[id].clone();
        debug_assert_eq!(delta.len(), id * width);
        for sym in 0..width {
            let mut next = BTreeSet::new();
            for &s in &subset {
                for &(label, t) in &nfa.transitions[s] {
                    if label == Some(sym) {
                        next.insert(t);
                    }
                }
            }
            nfa.closure_into(&mut next);
            let next_id = match ids.get(&next) {
                Some(&existing) => existing,
                None => {
                    let new_id = subsets.len();
                    ids.insert(next.clone(), new_id);
                    subsets.push(next);
                    queue.push_back(new_id);
                    new_id
                }
            };
            delta.push(next_id);
        }
    }

    let finals: Vec<bool> = subsets
        .iter()
        .map(|set| set.iter().any(|s| nfa.finals.contains(s)))
        .collect();
    let n = finals.len();
    Dfa {
        alphabet: nfa.alphabet.clone(),
        delta,
        finals,
        order: 0,
        suffix_tags: vec![Vec::new(); n],
        origin: (0..n).collect(),
    }
}

/// Duplicates states until every state reachable by an input of length
/// ≥ `m` has a unique length-`m` reaching suffix.
///
/// Works in passes `k = 1..=m`. Each pass computes, per state, the set of
/// feasible length-`k` reaching suffixes by breadth-first search over
/// (state, suffix) pairs, then splits every state with two or more into one
/// copy per suffix. Incoming edges are redirected by the suffix they
/// complete, which is determined by the source state's pass-(k−1) tag;
/// outgoing edges are duplicated. The first copy keeps the original state's
/// identity (and the start designation), so histories shorter than `k`
/// flow into it — such states are exempt from the uniqueness requirement
/// and keep a shorter tag. With `m = 0` the input is returned unchanged.
///
/// `origin` on the result links every state to the input state it copies.
/// States are renumbered breadth-first at the end.
pub fn disambiguate(dfa: &Dfa, m: usize) -> Dfa {
    if m == 0 {
        return dfa.clone();
    }
    let width = dfa.alphabet.len();
    let mut cur = dfa.clone();
    // Tags are rebuilt each pass; origins chain back to the input automaton.
    cur.origin = (0..cur.num_states()).collect();
    cur.suffix_tags = vec![Vec::new(); cur.num_states()];

    for k in 1..=m {
        let n = cur.num_states();
        let (full, shorts) = reaching_suffixes(&cur, k);

        // Copies per state, keyed by their full-length suffix (sorted); a
        // state without full-length suffixes keeps one copy tagged by its
        // shortest reaching prefix.
        let mut copies: Vec<Vec<Vec<SymbolId>>> = Vec::with_capacity(n);
        for q in 0..n {
            if full[q].len() >= 2 {
                copies.push(full[q].iter().cloned().collect());
            } else if let Some(tag) = full[q].iter().next() {
                copies.push(vec![tag.clone()]);
            } else {
                let tag = shorts[q]
                    .iter()
                    .min_by_key(|t| (t.len(), (*t).clone()))
                    .cloned()
                    .unwrap_or_default();
                copies.push(vec![tag]);
            }
        }

        // New ids: copy 0 of q keeps id q; further copies are appended.
        let mut extra = n;
        let mut id_of = vec![Vec::new(); n];
        for q in 0..n {
            id_of[q].push(q);
            for _ in 1..copies[q].len() {
                id_of[q].push(extra);
                extra += 1;
            }
        }
        let total = extra;

        let mut delta = vec![0usize; total * width];
        let mut finals = vec![false; total];
        let mut origin = vec![0usize; total];
        let mut tags = vec![Vec::new(); total];

        for q in 0..n {
            for (ci, tag) in copies[q].iter().enumerate() {
                let id = id_of[q][ci];
                finals[id] = cur.finals[q];
                origin[id] = cur.origin[q];
                tags[id] = tag.clone();
                for sym in 0..width {
                    let t = cur.step(q, sym);
                    // Suffix completed by this edge: the source's pass-(k−1)
                    // tag extended by the symbol, truncated to length k.
                    // (All copies of q share that tag's last k−1 symbols, so
                    // routing is identical across copies.)
                    let mut completed = cur.suffix_tags[q].clone();
                    completed.push(sym);
                    if completed.len() > k {
                        completed.remove(0);
                    }
                    let target_ci = if completed.len() == k {
                        copies[t]
                            .iter()
                            .position(|c| c == &completed)
                            .expect("completed suffix is feasible for target")
                    } else {
                        // Short history: immaterial for statistics, routed
                        // to the identity copy.
                        0
                    };
                    delta[id * width + sym] = id_of[t][target_ci];
                }
            }
        }

        cur = Dfa {
            alphabet: cur.alphabet,
            delta,
            finals,
            order: k,
            suffix_tags: tags,
            origin,
        };
    }

    renumber_bfs(&cur)
}

/// Per state, the feasible reaching suffixes at length `k`: `full` holds
/// suffixes of length exactly `k` (from inputs of length ≥ k), `shorts`
/// whole input prefixes shorter than `k`.
#[allow(clippy::type_complexity)]
fn reaching_suffixes(
    dfa: &Dfa,
    k: usize,
) -> (Vec<BTreeSet<Vec<SymbolId>>>, Vec<BTreeSet<Vec<SymbolId>>>) {
    let n = dfa.num_states();
    let width = dfa.alphabet.len();
    let mut full = vec![BTreeSet::new(); n];
    let mut shorts = vec![BTreeSet::new(); n];
    let mut seen: BTreeSet<(StateId, Vec<SymbolId>)> = BTreeSet::new();
    let mut queue: VecDeque<(StateId, Vec<SymbolId>)> = VecDeque::new();

    seen.insert((dfa.start(), Vec::new()));
    shorts[dfa.start()].insert(Vec::new());
    queue.push_back((dfa.start(), Vec::new()));

    while let Some((q, w)) = queue.pop_front() {
        for sym in 0..width {
            let t = dfa.step(q, sym);
            let mut next = w.clone();
            next.push(sym);
            if next.len() > k {
                next.remove(0);
            }
            if next.len() == k {
                full[t].insert(next.clone());
            } else {
                shorts[t].insert(next.clone());
            }
            if seen.insert((t, next.clone())) {
                queue.push_back((t, next));
            }
        }
    }
    (full, shorts)
}

/// Renumbers states breadth-first from the start state, expanding symbols
/// in alphabet order.
fn renumber_bfs(dfa: &Dfa) -> Dfa {
    let n = dfa.num_states();
    let width = dfa.alphabet.len();
    let mut remap = vec![usize::MAX; n];
    let mut order_of: Vec<StateId> = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    remap[dfa.start()] = 0;
    order_of.push(dfa.start());
    queue.push_back(dfa.start());
    while let Some(q) = queue.pop_front() {
        for sym in 0..width {
            let t = dfa.step(q, sym);
            if remap[t] == usize::MAX {
                remap[t] = order_of.len();
                order_of.push(t);
                queue.push_back(t);
            }
        }
    }
    debug_assert_eq!(order_of.len(), n, "all states reachable");

    let mut delta = vec![0usize; n * width];
    let mut finals = vec![false; n];
    let mut tags = vec![Vec::new(); n];
    let mut origin = vec![0usize; n];
    for (new_id, &old_id) in order_of.iter().enumerate() {
        finals[new_id] = dfa.finals[old_id];
        tags[new_id] = dfa.suffix_tags[old_id].clone();
        origin[new_id] = dfa.origin[old_id];
        for sym in 0..width {
            delta[new_id * width + sym] = remap[dfa.step(old_id, sym)];
        }
    }
    Dfa {
        alphabet: dfa.alphabet.clone(),
        delta,
        finals,
        order: dfa.order,
        suffix_tags: tags,
        origin,
    }
}

/// A compiled recognition automaton plus any compile-time warnings.
#[derive(Debug, Clone)]
pub struct Compiled {
    pub dfa: Dfa,
    pub warnings: Vec<String>,
}

/// Compiles a pattern into the m-unambiguous recognition automaton for
/// `Σ*·R`.
pub fn compile(ast: &PatternAst, alphabet: &Alphabet, m: usize) -> Result<Compiled> {
    validate_ast(ast, alphabet)?;
    let full = prefix_any(ast, alphabet);
    let nfa = build_nfa(&full, alphabet)?;
    let base = determinize(&nfa);
    let dfa = disambiguate(&base, m);

    // Patterns denote non-empty languages by construction, so every state
    // of the Σ*·R automaton can still reach a final state.
    assert!(
        no_dead_states(&dfa),
        "recognition automaton has a dead state"
    );

    let mut warnings = Vec::new();
    if dfa.is_final(dfa.start()) {
        warnings.push(
            "pattern matches the empty string; every stream position is a trivial match"
                .to_string(),
        );
    }
    Ok(Compiled { dfa, warnings })
}

fn no_dead_states(dfa: &Dfa) -> bool {
    // Reverse reachability from the final states.
    let n = dfa.num_states();
    let mut reaches = dfa.finals.clone();
    loop {
        let mut changed = false;
        for s in 0..n {
            if !reaches[s] && (0..dfa.alphabet().len()).any(|sym| reaches[dfa.step(s, sym)]) {
                reaches[s] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    reaches.iter().all(|&r| r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::parse_pattern;

    fn abc() -> Alphabet {
        Alphabet::new(["a", "b", "c"]).unwrap()
    }

    /// All symbol sequences over `width` symbols with length in `0..=max_len`.
    fn all_strings(width: usize, max_len: usize) -> Vec<Vec<SymbolId>> {
        let mut out = vec![vec![]];
        let mut layer = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for s in &layer {
                for sym in 0..width {
                    let mut t = s.clone();
                    t.push(sym);
                    next.push(t);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Test-side membership oracle: memoized recursive descent over the AST.
    fn ast_matches(ast: &PatternAst, alphabet: &Alphabet, s: &[SymbolId]) -> bool {
        fn go(
            ast: &PatternAst,
            alphabet: &Alphabet,
            s: &[SymbolId],
            lo: usize,
            hi: usize,
            memo: &mut HashMap<(usize, usize, usize), bool>,
            node_ids: &mut usize,
        ) -> bool {
            // Each AST node gets a stable id from the traversal order of the
            // caller; compute structurally instead by hashing the pointer.
            let key = (ast as *const PatternAst as usize, lo, hi);
            let _ = node_ids;
            if let Some(&v) = memo.get(&(key.0, key.1, key.2)) {
                return v;
            }
            let v = match ast {
                PatternAst::Epsilon => lo == hi,
                PatternAst::Symbol(name) => {
                    hi - lo == 1 && alphabet.id_of(name) == Some(s[lo])
                }
                PatternAst::Union(l, r) => {
                    go(l, alphabet, s, lo, hi, memo, node_ids)
                        || go(r, alphabet, s, lo, hi, memo, node_ids)
                }
                PatternAst::Concat(l, r) => (lo..=hi).any(|mid| {
                    go(l, alphabet, s, lo, mid, memo, node_ids)
                        && go(r, alphabet, s, mid, hi, memo, node_ids)
                }),
                PatternAst::Star(c) => {
                    lo == hi
                        || (lo + 1..=hi).any(|mid| {
                            go(c, alphabet, s, lo, mid, memo, node_ids)
                                && go(ast, alphabet, s, mid, hi, memo, node_ids)
                        })
                }
            };
            memo.insert((key.0, key.1, key.2), v);
            v
        }
        let mut memo = HashMap::new();
        let mut ids = 0;
        go(ast, alphabet, s, 0, s.len(), &mut memo, &mut ids)
    }

    /// Suffix-matching oracle for Σ*·R: some suffix of `s` is in L(R).
    fn some_suffix_matches(ast: &PatternAst, alphabet: &Alphabet, s: &[SymbolId]) -> bool {
        (0..=s.len()).any(|j| ast_matches(ast, alphabet, &s[j..]))
    }

    #[test]
    fn nfa_symbol_base_case() {
        let al = abc();
        let nfa = build_nfa(&PatternAst::symbol("a"), &al).unwrap();
        assert_eq!(nfa.num_states(), 2);
        assert!(nfa.accepts(&[0]));
        assert!(!nfa.accepts(&[]));
        assert!(!nfa.accepts(&[1]));
        assert!(!nfa.accepts(&[0, 0]));
    }

    #[test]
    fn nfa_epsilon_base_case() {
        let al = abc();
        let nfa = build_nfa(&PatternAst::Epsilon, &al).unwrap();
        assert!(nfa.accepts(&[]));
        assert!(!nfa.accepts(&[0]));
    }

    #[test]
    fn nfa_accepts_exactly_acc() {
        let al = abc();
        let ast = parse_pattern("a;c;c", &al).unwrap();
        let nfa = build_nfa(&ast, &al).unwrap();
        for s in all_strings(3, 4) {
            let expected = s == [0, 2, 2];
            assert_eq!(nfa.accepts(&s), expected, "string {s:?}");
        }
    }

    #[test]
    fn prefix_any_structure() {
        let al = abc();
        let ast = parse_pattern("a;c;c", &al).unwrap();
        let full = prefix_any(&ast, &al);
        let expected = PatternAst::concat(
            PatternAst::star(PatternAst::union(
                PatternAst::symbol("a"),
                PatternAst::union(PatternAst::symbol("b"), PatternAst::symbol("c")),
            )),
            ast,
        );
        assert_eq!(full, expected);
    }

    #[test]
    fn prefix_any_epsilon_accepts_everything() {
        let al = abc();
        let full = prefix_any(&PatternAst::Epsilon, &al);
        let nfa = build_nfa(&full, &al).unwrap();
        for s in all_strings(3, 3) {
            assert!(nfa.accepts(&s));
        }
    }

    #[test]
    fn prefix_any_single_symbol_alphabet() {
        let al = Alphabet::new(["a"]).unwrap();
        let full = prefix_any(&PatternAst::symbol("a"), &al);
        let nfa = build_nfa(&full, &al).unwrap();
        for len in 0..=5 {
            let s = vec![0usize; len];
            assert_eq!(nfa.accepts(&s), len >= 1);
        }
    }

    /// The Σ*·(a·c·c) automaton over {a,b,c}: four states, final state 3.
    fn fig_dfa() -> Dfa {
        let al = abc();
        let ast = parse_pattern("a;c;c", &al).unwrap();
        let nfa = build_nfa(&prefix_any(&ast, &al), &al).unwrap();
        determinize(&nfa)
    }

    #[test]
    fn determinize_sequence_pattern() {
        let dfa = fig_dfa();
        assert_eq!(dfa.num_states(), 4);
        assert_eq!(dfa.final_states(), vec![3]);
        // Rows in alphabet order a, b, c.
        assert_eq!(dfa.delta_row(0), &[1, 0, 0]);
        assert_eq!(dfa.delta_row(1), &[1, 0, 2]);
        assert_eq!(dfa.delta_row(2), &[1, 0, 3]);
        assert_eq!(dfa.delta_row(3), &[1, 0, 0]);
    }

    #[test]
    fn determinize_universal_language() {
        let al = abc();
        let nfa = build_nfa(&prefix_any(&PatternAst::Epsilon, &al), &al).unwrap();
        let dfa = determinize(&nfa);
        assert_eq!(dfa.num_states(), 1);
        assert!(dfa.is_final(0));
        assert_eq!(dfa.delta_row(0), &[0, 0, 0]);
    }

    #[test]
    fn determinize_agrees_with_suffix_oracle() {
        let al = abc();
        for text in ["a;(a+b)*;c", "a;c;c", "(a+b)*;c", "a*;b"] {
            let ast = parse_pattern(text, &al).unwrap();
            let nfa = build_nfa(&prefix_any(&ast, &al), &al).unwrap();
            let dfa = determinize(&nfa);
            for s in all_strings(3, 8) {
                assert_eq!(
                    dfa.accepts(&s),
                    some_suffix_matches(&ast, &al, &s),
                    "pattern {text}, string {s:?}"
                );
            }
        }
    }

    #[test]
    fn step_follows_table() {
        let dfa = fig_dfa();
        assert_eq!(dfa.step(0, 0), 1);
        assert_eq!(dfa.step_named(0, "a").unwrap(), 1);
        assert!(matches!(
            dfa.step_named(0, "z"),
            Err(Error::UnknownSymbol(_))
        ));
        // "bacc" visits 0, 1, 2, 3.
        let mut state = dfa.start();
        let mut visited = Vec::new();
        for sym in [1usize, 0, 2, 2] {
            state = dfa.step(state, sym);
            visited.push(state);
        }
        assert_eq!(visited, vec![0, 1, 2, 3]);
    }

    #[test]
    fn disambiguate_m0_is_identity() {
        let dfa = fig_dfa();
        assert_eq!(disambiguate(&dfa, 0), dfa);
    }

    #[test]
    fn disambiguate_m1_splits_state_zero() {
        let dfa = fig_dfa();
        let d1 = disambiguate(&dfa, 1);
        assert_eq!(d1.num_states(), 5);
        assert_eq!(d1.order(), 1);
        // Exactly the origin-0 state is duplicated.
        let clusters = d1.origin_clusters();
        assert_eq!(clusters[&0].len(), 2);
        assert_eq!(clusters[&1].len(), 1);
        assert_eq!(clusters[&2].len(), 1);
        assert_eq!(clusters[&3].len(), 1);
        // The two copies of state 0 are tagged b and c; the start keeps b.
        let tags: Vec<&[SymbolId]> =
            clusters[&0].iter().map(|&s| d1.suffix_tag(s)).collect();
        assert!(tags.contains(&&[1][..]) && tags.contains(&&[2][..]));
        assert_eq!(d1.suffix_tag(d1.start()), &[1]);
        assert_eq!(d1.state_label(d1.start()), "0_b");
    }

    #[test]
    fn disambiguate_preserves_language() {
        let al = abc();
        for text in ["a;c;c", "a;(a+b)*;c", "(a+b)*;c"] {
            let ast = parse_pattern(text, &al).unwrap();
            let nfa = build_nfa(&prefix_any(&ast, &al), &al).unwrap();
            let base = determinize(&nfa);
            for m in [1, 2] {
                let dm = disambiguate(&base, m);
                for s in all_strings(3, 8) {
                    assert_eq!(
                        dm.accepts(&s),
                        base.accepts(&s),
                        "pattern {text}, m {m}, string {s:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn disambiguate_m2_suffixes_are_singletons() {
        let dfa = fig_dfa();
        let d2 = disambiguate(&dfa, 2);
        let (full, shorts) = reaching_suffixes(&d2, 2);
        for q in 0..d2.num_states() {
            assert!(full[q].len() <= 1, "state {q} has suffixes {:?}", full[q]);
            if let Some(tag) = full[q].iter().next() {
                assert_eq!(d2.suffix_tag(q), &tag[..]);
            } else {
                assert!(shorts[q].contains(&d2.suffix_tag(q).to_vec()));
            }
        }
    }

    #[test]
    fn origin_collapse_recovers_input() {
        let al = abc();
        for text in ["a;c;c", "a;(a+b)*;c"] {
            let ast = parse_pattern(text, &al).unwrap();
            let nfa = build_nfa(&prefix_any(&ast, &al), &al).unwrap();
            let base = determinize(&nfa);
            for m in [1, 2] {
                let dm = disambiguate(&base, m);
                assert_eq!(dm.origin_of(dm.start()), base.start());
                for q in 0..dm.num_states() {
                    assert_eq!(dm.is_final(q), base.is_final(dm.origin_of(q)));
                    for sym in 0..al.len() {
                        assert_eq!(
                            dm.origin_of(dm.step(q, sym)),
                            base.step(dm.origin_of(q), sym),
                            "pattern {text}, m {m}, state {q}, symbol {sym}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn compile_warns_on_epsilon_language() {
        let al = abc();
        let compiled = compile(&PatternAst::star(PatternAst::symbol("a")), &al, 0).unwrap();
        assert_eq!(compiled.warnings.len(), 1);
        let compiled = compile(&PatternAst::symbol("a"), &al, 0).unwrap();
        assert!(compiled.warnings.is_empty());
    }

    #[test]
    fn compile_short_reachability_keeps_short_tags() {
        // Over Σ = {a}, the start of Σ*·a is reachable only by ε and keeps
        // an empty tag at m = 1.
        let al = Alphabet::new(["a"]).unwrap();
        let compiled = compile(&PatternAst::symbol("a"), &al, 1).unwrap();
        let dfa = &compiled.dfa;
        assert_eq!(dfa.suffix_tag(dfa.start()), &[] as &[SymbolId]);
        let final_state = dfa.final_states()[0];
        assert_eq!(dfa.suffix_tag(final_state), &[0]);
    }
}
