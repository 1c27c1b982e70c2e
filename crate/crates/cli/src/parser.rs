use std::collections::HashMap;

use crate::diagnostic::Diagnostic;
use crate::lexer::{lex, Tok, Token};

/// An identifier with its byte offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Name {
    pub id: String,
    pub pos: usize,
}

/// Raw polynomial text, parsed later against the ring it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub text: String,
    pub pos: usize,
}

pub type MatrixExpr = Vec<Vec<Expr>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingDef {
    /// `QQ[x,y]/(…)`; `None` means the field given on the command line.
    Fresh { field: Option<Expr>, vars: Vec<Name>, rels: Vec<Expr> },
    /// `S[x,y]/(…)`: new variables over a base ring.
    Over { base: Name, vars: Vec<Name>, rels: Vec<Expr> },
    /// `S/(…)`.
    Quotient { base: Name, rels: Vec<Expr> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleDef {
    Coker { ring: Name, matrix: MatrixExpr, degrees: Option<Vec<i64>> },
    Free { ring: Name, rank: usize },
    Residue { ring: Name },
    Ideal { ring: Name, gens: Vec<Expr> },
    OfIdeal { ideal: Name },
    Syzygy { module: Name, n: usize },
    Dual { module: Name },
    Transpose { module: Name },
    Fibre { module: Name, point: Vec<Expr> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexDef {
    Resolve { module: Name, length: Option<usize> },
    Dual { complex: Name },
    Koszul { ring: Name, seq: Vec<Expr> },
    Hull { module: Name },
    Periodic { mf: Name },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MfDef {
    Matrices { ring: Name, phi: MatrixExpr, psi: MatrixExpr },
    Plane { ring: Name, section: Name },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Reflexive(Name),
    Nstab(Name, usize),
    Orthogonal(Name, usize),
    Knudsen { ring: Name, section: Name, points: Option<Vec<Vec<Expr>>>, window: Option<usize> },
    RegularSeq { ring: Name, seq: Vec<Expr> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Compute {
    Gb(Name),
    Nf(Name, Expr),
    Syz(Name, MatrixExpr),
    Resolve(Name, Option<usize>),
    Ext(Name, Option<Name>, Option<usize>),
    Dual(Name),
    Transpose(Name),
    Hilbert(Name),
    Fitting(Name, Option<usize>),
    Depth(Name),
    Gdim(Name),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Ring { name: Name, def: RingDef },
    Map { name: Name, section: bool, source: Name, target: Name, assigns: Vec<(Name, Expr)> },
    Module { name: Name, def: ModuleDef },
    Ideal { name: Name, ring: Name, gens: Vec<Expr> },
    Complex { name: Name, def: ComplexDef },
    Mf { name: Name, def: MfDef },
    Check(Check),
    Compute(Compute),
    Approximate { module: Name, n: usize, r: usize, minimal: bool },
    ApproximatePointed { ring: Name, section: Name },
    Stabilize { ring: Name, section: Name },
    Versal { ring: Name },
    Square { ring: Name },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub stmt: Stmt,
    pub start: usize,
    pub end: usize,
}

const RESERVED: [&str; 6] = ["QQ", "Q", "k", "Fp", "GF", "ZZ"];

struct Parser<'a> {
    text: &'a str,
    toks: Vec<Token>,
    i: usize,
}

type P<T> = Result<T, Diagnostic>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.text.len(), |t| t.start)
    }

    fn err<T>(&self, expected: &str) -> P<T> {
        let found = self.peek().map_or("end of input".to_string(), |t| t.describe());
        Err(Diagnostic::at(self.text, self.pos(), format!("expected {expected}, found {found}")))
    }

    fn at_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(x)) if *x == s)
    }

    fn at_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(x)) if x == w)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        let hit = self.at_sym(s);
        if hit {
            self.i += 1;
        }
        hit
    }

    fn eat_word(&mut self, w: &str) -> bool {
        let hit = self.at_word(w);
        if hit {
            self.i += 1;
        }
        hit
    }

    fn sym(&mut self, s: &str) -> P<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.err(&format!("`{s}`"))
        }
    }

    fn word(&mut self, w: &str) -> P<()> {
        if self.eat_word(w) {
            Ok(())
        } else {
            self.err(&format!("`{w}`"))
        }
    }

    fn name(&mut self) -> P<Name> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let n = Name { id: s.clone(), pos: self.pos() };
                self.i += 1;
                Ok(n)
            }
            _ => self.err("a name"),
        }
    }

    fn binder(&mut self) -> P<Name> {
        let n = self.name()?;
        if RESERVED.contains(&n.id.as_str()) {
            return Err(Diagnostic::at(self.text, n.pos, format!("`{}` is reserved for fields", n.id)));
        }
        Ok(n)
    }

    fn num(&mut self) -> P<usize> {
        match self.peek() {
            Some(Tok::Num(s)) => {
                let v = s.parse().map_err(|_| Diagnostic::at(self.text, self.pos(), "number too large"))?;
                self.i += 1;
                Ok(v)
            }
            _ => self.err("a number"),
        }
    }

    fn opt_num(&mut self) -> P<Option<usize>> {
        if matches!(self.peek(), Some(Tok::Num(_))) {
            self.num().map(Some)
        } else {
            Ok(None)
        }
    }

    fn int(&mut self) -> P<i64> {
        let neg = self.eat_sym("-");
        let v = self.num()? as i64;
        Ok(if neg { -v } else { v })
    }

    /// Source text up to the next `,` `;` `]` `)` `}` at bracket depth zero.
    fn expr(&mut self) -> P<Expr> {
        let start = self.i;
        let mut depth = 0i32;
        while let Some(t) = self.peek() {
            match t {
                Tok::Sym("(") | Tok::Sym("[") => depth += 1,
                Tok::Sym(")") | Tok::Sym("]") | Tok::Sym("}") | Tok::Sym(",") | Tok::Sym(";") if depth == 0 => break,
                Tok::Sym(")") | Tok::Sym("]") => depth -= 1,
                _ => {}
            }
            self.i += 1;
        }
        if self.i == start {
            return self.err("an expression");
        }
        let (a, b) = (self.toks[start].start, self.toks[self.i - 1].end);
        Ok(Expr {
            text: self.text[a..b].to_string(),
            pos: a,
        })
    }

    fn list<T>(&mut self, open: &str, close: &str, mut item: impl FnMut(&mut Self) -> P<T>) -> P<Vec<T>> {
        self.sym(open)?;
        let mut out = Vec::new();
        if self.eat_sym(close) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat_sym(close) {
                return Ok(out);
            }
            if !self.eat_sym(",") {
                return self.err(&format!("`,` or `{close}`"));
            }
        }
    }

    fn exprs(&mut self) -> P<Vec<Expr>> {
        self.list("(", ")", |p| p.expr())
    }

    fn matrix(&mut self) -> P<MatrixExpr> {
        let pos = self.pos();
        let rows = self.list("[", "]", |p| p.list("[", "]", |p| p.expr()))?;
        let w = rows.first().map_or(0, |r| r.len());
        if w == 0 || rows.iter().any(|r| r.len() != w) {
            return Err(Diagnostic::at(self.text, pos, "matrix rows must be nonempty and of equal length"));
        }
        Ok(rows)
    }

    fn point(&mut self) -> P<Vec<Expr>> {
        self.list("(", ")", |p| p.expr())
    }

    fn ring_def(&mut self) -> P<RingDef> {
        let head = self.name()?;
        let field_like = |s: &str| matches!(s, "QQ" | "Q" | "k" | "Fp" | "GF" | "ZZ");
        if field_like(&head.id) {
            let field = self.field_tail(&head)?;
            let vars = self.list("[", "]", |p| p.name())?;
            let rels = self.rels()?;
            return Ok(RingDef::Fresh { field, vars, rels });
        }
        if self.at_sym("[") {
            let vars = self.list("[", "]", |p| p.name())?;
            let rels = self.rels()?;
            return Ok(RingDef::Over { base: head, vars, rels });
        }
        if self.at_sym("/") {
            let rels = self.rels()?;
            return Ok(RingDef::Quotient { base: head, rels });
        }
        self.err("`[` or `/`")
    }

    fn field_tail(&mut self, head: &Name) -> P<Option<Expr>> {
        let start = head.pos;
        match head.id.as_str() {
            "k" => return Ok(None),
            "QQ" | "Q" => {}
            "Fp" | "ZZ" => {
                if !self.eat_sym(":") && !self.eat_sym("/") {
                    return self.err("`:`");
                }
                self.num()?;
            }
            _ => {
                self.sym("(")?;
                self.num()?;
                self.sym(")")?;
            }
        }
        let end = self.toks[self.i - 1].end;
        Ok(Some(Expr {
            text: self.text[start..end].to_string(),
            pos: start,
        }))
    }

    fn rels(&mut self) -> P<Vec<Expr>> {
        if self.eat_sym("/") {
            self.exprs()
        } else {
            Ok(vec![])
        }
    }

    fn module_def(&mut self) -> P<ModuleDef> {
        let kind = self.name()?;
        Ok(match kind.id.as_str() {
            "coker" => {
                let ring = self.name()?;
                let matrix = self.matrix()?;
                let degrees = if self.eat_word("degrees") { Some(self.list("[", "]", |p| p.int())?) } else { None };
                ModuleDef::Coker { ring, matrix, degrees }
            }
            "free" => ModuleDef::Free {
                ring: self.name()?,
                rank: self.num()?,
            },
            "residue" => ModuleDef::Residue { ring: self.name()? },
            "ideal" => {
                let n = self.name()?;
                if self.at_sym("(") {
                    ModuleDef::Ideal { ring: n, gens: self.exprs()? }
                } else {
                    ModuleDef::OfIdeal { ideal: n }
                }
            }
            "syzygy" => ModuleDef::Syzygy {
                module: self.name()?,
                n: self.num()?,
            },
            "dual" => ModuleDef::Dual { module: self.name()? },
            "transpose" => ModuleDef::Transpose { module: self.name()? },
            "fibre" => {
                let module = self.name()?;
                self.word("at")?;
                ModuleDef::Fibre { module, point: self.point()? }
            }
            _ => {
                self.i -= 1;
                return self.err("`coker`, `free`, `residue`, `ideal`, `syzygy`, `dual`, `transpose` or `fibre`");
            }
        })
    }

    fn complex_def(&mut self) -> P<ComplexDef> {
        let kind = self.name()?;
        Ok(match kind.id.as_str() {
            "resolve" => ComplexDef::Resolve {
                module: self.name()?,
                length: self.opt_num()?,
            },
            "dual" => ComplexDef::Dual { complex: self.name()? },
            "koszul" => ComplexDef::Koszul {
                ring: self.name()?,
                seq: self.exprs()?,
            },
            "hull" => ComplexDef::Hull { module: self.name()? },
            "periodic" => ComplexDef::Periodic { mf: self.name()? },
            _ => {
                self.i -= 1;
                return self.err("`resolve`, `dual`, `koszul`, `hull` or `periodic`");
            }
        })
    }

    fn check(&mut self) -> P<Check> {
        let kind = self.name()?;
        Ok(match kind.id.as_str() {
            "reflexive" => Check::Reflexive(self.name()?),
            "nstab" => Check::Nstab(self.name()?, self.num()?),
            "orthogonal" => Check::Orthogonal(self.name()?, self.num()?),
            "knudsen" => {
                let ring = self.name()?;
                let section = self.name()?;
                let points = if self.eat_word("at") { Some(self.list("[", "]", |p| p.point())?) } else { None };
                let window = if self.eat_word("window") { Some(self.num()?) } else { None };
                Check::Knudsen { ring, section, points, window }
            }
            "regular" => {
                self.sym("-")?;
                self.word("seq")?;
                Check::RegularSeq {
                    ring: self.name()?,
                    seq: self.exprs()?,
                }
            }
            _ => {
                self.i -= 1;
                return self.err("`reflexive`, `nstab`, `orthogonal`, `knudsen` or `regular-seq`");
            }
        })
    }

    fn compute(&mut self) -> P<Compute> {
        let kind = self.name()?;
        Ok(match kind.id.as_str() {
            "gb" => Compute::Gb(self.name()?),
            "nf" => Compute::Nf(self.name()?, self.expr()?),
            "syz" => Compute::Syz(self.name()?, self.matrix()?),
            "resolve" => Compute::Resolve(self.name()?, self.opt_num()?),
            "ext" => {
                let m = self.name()?;
                let n = if matches!(self.peek(), Some(Tok::Ident(_))) { Some(self.name()?) } else { None };
                Compute::Ext(m, n, self.opt_num()?)
            }
            "dual" => Compute::Dual(self.name()?),
            "transpose" => Compute::Transpose(self.name()?),
            "hilbert" => Compute::Hilbert(self.name()?),
            "fitting" => Compute::Fitting(self.name()?, self.opt_num()?),
            "depth" => Compute::Depth(self.name()?),
            "gdim" => Compute::Gdim(self.name()?),
            _ => {
                self.i -= 1;
                return self.err("`gb`, `nf`, `syz`, `resolve`, `ext`, `dual`, `transpose`, `hilbert`, `fitting`, `depth` or `gdim`");
            }
        })
    }

    fn map_body(&mut self) -> P<Vec<(Name, Expr)>> {
        self.list("{", "}", |p| {
            let v = p.name()?;
            p.sym("->")?;
            Ok((v, p.expr()?))
        })
    }

    fn statement(&mut self) -> P<Stmt> {
        let kw = self.name()?;
        let stmt = match kw.id.as_str() {
            "ring" => {
                let name = self.binder()?;
                self.sym("=")?;
                Stmt::Ring { name, def: self.ring_def()? }
            }
            "map" | "section" => {
                let name = self.binder()?;
                self.sym(":")?;
                let source = self.name()?;
                self.sym("->")?;
                let target = self.name()?;
                Stmt::Map {
                    name,
                    section: kw.id == "section",
                    source,
                    target,
                    assigns: self.map_body()?,
                }
            }
            "module" => {
                let name = self.binder()?;
                self.sym("=")?;
                Stmt::Module { name, def: self.module_def()? }
            }
            "ideal" => {
                let name = self.binder()?;
                self.sym("=")?;
                let ring = self.name()?;
                Stmt::Ideal { name, ring, gens: self.exprs()? }
            }
            "complex" => {
                let name = self.binder()?;
                self.sym("=")?;
                Stmt::Complex { name, def: self.complex_def()? }
            }
            "mf" => {
                let name = self.binder()?;
                self.sym("=")?;
                let def = if self.eat_word("plane") {
                    MfDef::Plane {
                        ring: self.name()?,
                        section: self.name()?,
                    }
                } else {
                    let ring = self.name()?;
                    let phi = self.matrix()?;
                    let psi = self.matrix()?;
                    MfDef::Matrices { ring, phi, psi }
                };
                Stmt::Mf { name, def }
            }
            "check" => Stmt::Check(self.check()?),
            "compute" => Stmt::Compute(self.compute()?),
            "approximate" => {
                let target = self.name()?;
                if matches!(self.peek(), Some(Tok::Ident(s)) if s != "minimal") {
                    Stmt::ApproximatePointed {
                        ring: target,
                        section: self.name()?,
                    }
                } else {
                    let n = self.num()?;
                    let r = self.num()?;
                    Stmt::Approximate {
                        module: target,
                        n,
                        r,
                        minimal: self.eat_word("minimal"),
                    }
                }
            }
            "stabilize" => Stmt::Stabilize {
                ring: self.name()?,
                section: self.name()?,
            },
            "versal" => Stmt::Versal { ring: self.name()? },
            "square" => Stmt::Square { ring: self.name()? },
            _ => {
                self.i -= 1;
                return self.err("a statement keyword");
            }
        };
        self.sym(";")?;
        Ok(stmt)
    }
}

/// Parses a script and checks that every name is bound, once, to the right kind.
pub fn parse_script(text: &str) -> Result<Vec<Statement>, Diagnostic> {
    let toks = lex(text)?;
    let mut p = Parser { text, toks, i: 0 };
    let mut out = Vec::new();
    while p.i < p.toks.len() {
        let start = p.pos();
        let stmt = p.statement()?;
        let end = p.toks[p.i - 1].end;
        out.push(Statement { stmt, start, end });
    }
    check_names(text, &out)?;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Ring,
    Map,
    Module,
    Ideal,
    Complex,
    Mf,
}

impl Kind {
    fn noun(self) -> &'static str {
        match self {
            Kind::Ring => "ring",
            Kind::Map => "map",
            Kind::Module => "module",
            Kind::Ideal => "ideal",
            Kind::Complex => "complex",
            Kind::Mf => "matrix factorization",
        }
    }
}

fn check_names(text: &str, stmts: &[Statement]) -> Result<(), Diagnostic> {
    use Kind::*;
    let mut scope: HashMap<String, Kind> = HashMap::new();
    let need = |scope: &HashMap<String, Kind>, n: &Name, kinds: &[Kind]| -> Result<(), Diagnostic> {
        match scope.get(&n.id) {
            None => Err(Diagnostic::at(text, n.pos, format!("unknown name `{}`", n.id))),
            Some(k) if !kinds.contains(k) => {
                let want: Vec<&str> = kinds.iter().map(|k| k.noun()).collect();
                Err(Diagnostic::at(text, n.pos, format!("`{}` is a {}, expected a {}", n.id, k.noun(), want.join(" or "))))
            }
            _ => Ok(()),
        }
    };
    for s in stmts {
        let (bind, uses): (Option<(&Name, Kind)>, Vec<(&Name, &[Kind])>) = match &s.stmt {
            Stmt::Ring { name, def } => (
                Some((name, Ring)),
                match def {
                    RingDef::Fresh { .. } => vec![],
                    RingDef::Over { base, .. } | RingDef::Quotient { base, .. } => vec![(base, &[Ring][..])],
                },
            ),
            Stmt::Map { name, source, target, .. } => (Some((name, Map)), vec![(source, &[Ring][..]), (target, &[Ring][..])]),
            Stmt::Module { name, def } => (
                Some((name, Module)),
                match def {
                    ModuleDef::Coker { ring, .. } | ModuleDef::Free { ring, .. } | ModuleDef::Residue { ring } | ModuleDef::Ideal { ring, .. } => vec![(ring, &[Ring][..])],
                    ModuleDef::OfIdeal { ideal } => vec![(ideal, &[Ideal][..])],
                    ModuleDef::Syzygy { module, .. } | ModuleDef::Dual { module } | ModuleDef::Transpose { module } | ModuleDef::Fibre { module, .. } => {
                        vec![(module, &[Module][..])]
                    }
                },
            ),
            Stmt::Ideal { name, ring, .. } => (Some((name, Ideal)), vec![(ring, &[Ring][..])]),
            Stmt::Complex { name, def } => (
                Some((name, Complex)),
                match def {
                    ComplexDef::Resolve { module, .. } | ComplexDef::Hull { module } => vec![(module, &[Module][..])],
                    ComplexDef::Dual { complex } => vec![(complex, &[Complex][..])],
                    ComplexDef::Koszul { ring, .. } => vec![(ring, &[Ring][..])],
                    ComplexDef::Periodic { mf } => vec![(mf, &[Mf][..])],
                },
            ),
            Stmt::Mf { name, def } => (
                Some((name, Mf)),
                match def {
                    MfDef::Matrices { ring, .. } => vec![(ring, &[Ring][..])],
                    MfDef::Plane { ring, section } => vec![(ring, &[Ring][..]), (section, &[Map][..])],
                },
            ),
            Stmt::Check(c) => (
                None,
                match c {
                    Check::Reflexive(m) | Check::Nstab(m, _) | Check::Orthogonal(m, _) => vec![(m, &[Module][..])],
                    Check::Knudsen { ring, section, .. } => vec![(ring, &[Ring][..]), (section, &[Map][..])],
                    Check::RegularSeq { ring, .. } => vec![(ring, &[Ring][..])],
                },
            ),
            Stmt::Compute(c) => (
                None,
                match c {
                    Compute::Gb(n) | Compute::Nf(n, _) => vec![(n, &[Ideal, Ring][..])],
                    Compute::Syz(r, _) => vec![(r, &[Ring][..])],
                    Compute::Ext(m, n, _) => {
                        let mut v = vec![(m, &[Module][..])];
                        if let Some(n) = n {
                            v.push((n, &[Module][..]));
                        }
                        v
                    }
                    Compute::Dual(n) | Compute::Hilbert(n) => vec![(n, &[Module, Complex][..])],
                    Compute::Resolve(m, _) | Compute::Transpose(m) | Compute::Fitting(m, _) | Compute::Depth(m) | Compute::Gdim(m) => vec![(m, &[Module][..])],
                },
            ),
            Stmt::Approximate { module, .. } => (None, vec![(module, &[Module][..])]),
            Stmt::ApproximatePointed { ring, section } | Stmt::Stabilize { ring, section } => (None, vec![(ring, &[Ring][..]), (section, &[Map][..])]),
            Stmt::Versal { ring } | Stmt::Square { ring } => (None, vec![(ring, &[Ring][..])]),
        };
        for (n, kinds) in uses {
            need(&scope, n, kinds)?;
        }
        if let Some((n, k)) = bind {
            if scope.contains_key(&n.id) {
                return Err(Diagnostic::at(text, n.pos, format!("`{}` is already bound", n.id)));
            }
            scope.insert(n.id.clone(), k);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rings_over_a_base() {
        let s = parse_script("ring S = QQ[b,c]; ring R = S[x,y]/(x*y-b*c);").unwrap();
        assert_eq!(s.len(), 2);
        match &s[1].stmt {
            Stmt::Ring { def: RingDef::Over { base, vars, rels }, .. } => {
                assert_eq!(base.id, "S");
                assert_eq!(vars.len(), 2);
                assert_eq!(rels[0].text, "x*y-b*c");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sections_and_knudsen_checks() {
        let src = "ring S = QQ[b,c]; ring R = S[x,y]/(x*y-b*c);\nsection p: R -> S { x -> b, y -> c };\ncheck knudsen R p at [(0,0),(1,1)] window 4;";
        let s = parse_script(src).unwrap();
        match &s[3].stmt {
            Stmt::Check(Check::Knudsen { points: Some(p), window: Some(4), .. }) => assert_eq!(p.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn diagnostics_name_the_expected_token() {
        let e = parse_script("ring A = QQ[x,y]\nmodule K = residue A;").unwrap_err();
        assert_eq!((e.line, e.col), (2, 1));
        assert!(e.message.contains("expected `;`"), "{}", e.message);
        let e = parse_script("ring A = QQ[x];\ncompute ext K;").unwrap_err();
        assert_eq!((e.line, e.col), (2, 13));
        assert!(e.message.contains("unknown name `K`"));
        let e = parse_script("ring A = QQ[x];\ncheck reflexive A;").unwrap_err();
        assert!(e.message.contains("is a ring, expected a module"));
    }

    #[test]
    fn nested_expressions_stop_at_depth_zero() {
        let s = parse_script("ring A = QQ[x,y]; module M = coker A [[x*(x+y), y^2], [0, (x-1)*y]];").unwrap();
        match &s[1].stmt {
            Stmt::Module { def: ModuleDef::Coker { matrix, .. }, .. } => {
                assert_eq!(matrix[0][0].text, "x*(x+y)");
                assert_eq!(matrix[1][1].text, "(x-1)*y");
            }
            other => panic!("{other:?}"),
        }
    }
}
