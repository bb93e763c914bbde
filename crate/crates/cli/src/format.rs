//! The structure-file format.
//!
//! ```text
//! # comments start with '#'
//! [ring]
//! variables = x, y, z
//! characteristic = 0          # 0 or a prime, default 0
//! order = grevlex             # lex | grlex | grevlex, default grevlex
//!
//! [structure]
//! kind = poisson              # poisson | lie-rinehart | nambu-hypersurface
//! {x,y} = "x*y"
//! ```
//!
//! Lie-Rinehart entries:
//!
//! ```text
//! kind = lie-rinehart
//! generators = a1, a2
//! anchor a1 = "1, 0"
//! [a1,a2] = "y*a1 + x*a2"
//! ```
//!
//! Hypersurface entries (exactly three variables):
//!
//! ```text
//! kind = nambu-hypersurface
//! P = "1 + x*y*z"
//! weights = 1, 1, 1
//! Q = "z"
//! ```
//!
//! Values may be quoted; omitted brackets and anchors are zero.

use std::collections::BTreeMap;

use rinehart::{
    parse_poly, CoefficientField, FreeLieRinehart, HypersurfaceRing, LElement, MonomialOrder,
    PoissonStructure, PolyRing, Polynomial, Ring,
};

use crate::CliError;

#[derive(Clone, Debug)]
pub enum Structure {
    Poisson(PoissonStructure),
    LieRinehart(FreeLieRinehart),
    Nambu { h: Box<HypersurfaceRing>, q: Polynomial },
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Poisson(_) => "poisson",
            Structure::LieRinehart(_) => "lie-rinehart",
            Structure::Nambu { .. } => "nambu-hypersurface",
        }
    }

    pub fn ring(&self) -> &Ring {
        match self {
            Structure::Poisson(ps) => ps.ring(),
            Structure::LieRinehart(lr) => lr.ring(),
            Structure::Nambu { h, .. } => h.ambient(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StructureFile {
    pub ring: Ring,
    pub structure: Structure,
    /// Structure entries in file order with values as normalized text.
    pub entries: Vec<(String, String)>,
}

struct Entry {
    line: usize,
    key: String,
    value: String,
}

fn input(line: usize, message: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("line {line}: {message}"))
}

fn unquote(v: &str) -> &str {
    let v = v.trim();
    v.strip_prefix('"').and_then(|s| s.strip_suffix('"')).unwrap_or(v)
}

fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

fn split_list(v: &str) -> Vec<String> {
    v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn sections(text: &str) -> Result<BTreeMap<String, Vec<Entry>>, CliError> {
    let mut out: BTreeMap<String, Vec<Entry>> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let s = strip_comment(raw).trim();
        if s.is_empty() {
            continue;
        }
        if let Some(name) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            // `[a1,a2] = ...` is an entry, not a header
            if !s.contains('=') {
                let name = name.trim().to_string();
                if name != "ring" && name != "structure" {
                    return Err(input(line, format!("unknown section [{name}]")));
                }
                if out.contains_key(&name) {
                    return Err(input(line, format!("duplicate section [{name}]")));
                }
                out.insert(name.clone(), Vec::new());
                current = Some(name);
                continue;
            }
        }
        let Some(section) = &current else {
            return Err(input(line, "entry outside of a section"));
        };
        let Some((key, value)) = s.split_once('=') else {
            return Err(input(line, "expected `key = value`"));
        };
        let key: String = key.split_whitespace().collect::<Vec<_>>().join(" ");
        let entries = out.get_mut(section).expect("section exists");
        if entries.iter().any(|e| e.key == key) {
            return Err(input(line, format!("duplicate key `{key}`")));
        }
        entries.push(Entry {
            line,
            key,
            value: unquote(value).to_string(),
        });
    }
    Ok(out)
}

fn parse_ring(entries: &[Entry]) -> Result<Ring, CliError> {
    let mut variables = None;
    let mut characteristic = 0u64;
    let mut order = MonomialOrder::default();
    for e in entries {
        match e.key.as_str() {
            "variables" => variables = Some(split_list(&e.value)),
            "characteristic" => {
                characteristic = e
                    .value
                    .parse()
                    .map_err(|_| input(e.line, format!("bad characteristic `{}`", e.value)))?
            }
            "order" => {
                order = MonomialOrder::parse(&e.value)
                    .ok_or_else(|| input(e.line, format!("unknown monomial order `{}`", e.value)))?
            }
            other => return Err(input(e.line, format!("unknown ring key `{other}`"))),
        }
    }
    let variables = variables.ok_or_else(|| CliError::Input("[ring] needs `variables`".into()))?;
    let field = CoefficientField::from_characteristic(characteristic).map_err(CliError::core_input)?;
    let names: Vec<&str> = variables.iter().map(String::as_str).collect();
    PolyRing::with_order(&names, field, order).map_err(CliError::core_input)
}

fn poly(e: &Entry, text: &str, ring: &Ring) -> Result<Polynomial, CliError> {
    parse_poly(text, ring).map_err(|err| input(e.line, err))
}

/// `{x,y}` as a pair of variable indices.
fn bracket_key(e: &Entry, names: &[String]) -> Result<Option<(usize, usize)>, CliError> {
    let open = if e.key.starts_with('{') { ('{', '}') } else { ('[', ']') };
    let Some(inner) = e.key.strip_prefix(open.0).and_then(|k| k.strip_suffix(open.1)) else {
        return Ok(None);
    };
    let parts = split_list(inner);
    if parts.len() != 2 {
        return Err(input(e.line, format!("malformed bracket key `{}`", e.key)));
    }
    let find = |name: &str| {
        names
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| input(e.line, format!("unknown name `{name}`")))
    };
    let (i, j) = (find(&parts[0])?, find(&parts[1])?);
    if i == j {
        return Err(input(e.line, format!("bracket `{}` of a name with itself", e.key)));
    }
    Ok(Some((i, j)))
}

fn kind_of(entries: &[Entry]) -> Result<&str, CliError> {
    entries
        .iter()
        .find(|e| e.key == "kind")
        .map(|e| e.value.as_str())
        .ok_or_else(|| CliError::Input("[structure] needs `kind`".into()))
}

fn parse_poisson(ring: &Ring, entries: &[Entry]) -> Result<(Structure, Vec<(String, String)>), CliError> {
    let names = ring.variables().to_vec();
    let mut upper = Vec::new();
    let mut echo = Vec::new();
    for e in entries.iter().filter(|e| e.key != "kind") {
        let Some((i, j)) = bracket_key(e, &names)?.filter(|_| e.key.starts_with('{')) else {
            return Err(input(e.line, format!("unexpected poisson key `{}`", e.key)));
        };
        let p = poly(e, &e.value, ring)?;
        echo.push((format!("{{{},{}}}", names[i], names[j]), p.to_string()));
        upper.push(if i < j { (i, j, p) } else { (j, i, -p) });
    }
    let ps = PoissonStructure::from_upper(ring, upper).map_err(CliError::core_input)?;
    Ok((Structure::Poisson(ps), echo))
}

fn parse_lie_rinehart(ring: &Ring, entries: &[Entry]) -> Result<(Structure, Vec<(String, String)>), CliError> {
    let generators = entries
        .iter()
        .find(|e| e.key == "generators")
        .map(|e| split_list(&e.value))
        .ok_or_else(|| CliError::Input("lie-rinehart needs `generators`".into()))?;
    if let Some(g) = generators.iter().find(|g| ring.var_index(g).is_ok()) {
        return Err(CliError::Input(format!("generator `{g}` clashes with a ring variable")));
    }
    let n = ring.nvars();
    let d = generators.len();
    let mut anchor = vec![vec![Polynomial::zero(ring); n]; d];
    let mut brackets = Vec::new();
    let mut echo = vec![("generators".to_string(), generators.join(", "))];

    // bracket values are linear forms in the generators over the ring
    let mut all: Vec<&str> = ring.variables().iter().map(String::as_str).collect();
    all.extend(generators.iter().map(String::as_str));
    let extended = PolyRing::with_order(&all, ring.field(), ring.order())
        .map_err(CliError::core_input)?;

    for e in entries.iter().filter(|e| e.key != "kind" && e.key != "generators") {
        if let Some(g) = e.key.strip_prefix("anchor ") {
            let i = generators
                .iter()
                .position(|x| x == g.trim())
                .ok_or_else(|| input(e.line, format!("unknown generator `{}`", g.trim())))?;
            let comps: Vec<&str> = e.value.split(',').collect();
            if comps.len() != n {
                return Err(input(e.line, format!("anchor needs {n} components, found {}", comps.len())));
            }
            for (m, c) in comps.iter().enumerate() {
                anchor[i][m] = poly(e, c, ring)?;
            }
            let shown: Vec<String> = anchor[i].iter().map(ToString::to_string).collect();
            echo.push((format!("anchor {}", generators[i]), shown.join(", ")));
            continue;
        }
        let Some((i, k)) = bracket_key(e, &generators)?.filter(|_| e.key.starts_with('[')) else {
            return Err(input(e.line, format!("unexpected lie-rinehart key `{}`", e.key)));
        };
        let value = poly(e, &e.value, &extended)?;
        let mut coeffs = vec![Polynomial::zero(ring); d];
        for (mono, c) in value.terms() {
            let (vars, gens) = mono.0.split_at(n);
            let Some(j) = gens.iter().position(|&x| x == 1).filter(|_| gens.iter().sum::<u32>() == 1)
            else {
                return Err(input(e.line, "bracket value must be linear in the generators"));
            };
            let term = Polynomial::from_terms(ring, [(vars.to_vec(), c.clone())]);
            coeffs[j] = &coeffs[j] + &term;
        }
        let mut el = LElement::new(coeffs);
        if i > k {
            el = LElement::zero(ring, d).sub(&el);
        }
        let (i, k) = (i.min(k), i.max(k));
        brackets.push((i, k, el));
        echo.push((format!("[{},{}]", generators[i], generators[k]), String::new()));
    }
    let lr = FreeLieRinehart::from_brackets(ring, generators.clone(), anchor, brackets)
        .map_err(CliError::core_input)?;
    for (key, value) in echo.iter_mut().filter(|(k, _)| k.starts_with('[')) {
        let names = &key[1..key.len() - 1];
        let (a, b) = names.split_once(',').expect("formatted above");
        let i = generators.iter().position(|g| g == a).expect("known");
        let k = generators.iter().position(|g| g == b).expect("known");
        *value = lr.display_element(&lr.basis_bracket(i, k));
    }
    Ok((Structure::LieRinehart(lr), echo))
}

fn parse_nambu(ring: &Ring, entries: &[Entry]) -> Result<(Structure, Vec<(String, String)>), CliError> {
    if ring.nvars() != 3 {
        return Err(CliError::Input("nambu-hypersurface needs exactly three variables".into()));
    }
    let get = |key: &str| {
        entries
            .iter()
            .find(|e| e.key == key)
            .ok_or_else(|| CliError::Input(format!("nambu-hypersurface needs `{key}`")))
    };
    for e in entries {
        if !["kind", "P", "Q", "weights"].contains(&e.key.as_str()) {
            return Err(input(e.line, format!("unexpected nambu-hypersurface key `{}`", e.key)));
        }
    }
    let pe = get("P")?;
    let p = poly(pe, &pe.value, ring)?;
    let qe = get("Q")?;
    let q = poly(qe, &qe.value, ring)?;
    let we = get("weights")?;
    let w: Vec<i64> = split_list(&we.value)
        .iter()
        .map(|s| s.parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| input(we.line, format!("bad weights `{}`", we.value)))?;
    let weights: [i64; 3] = w
        .try_into()
        .map_err(|_| input(we.line, "weights needs three integers"))?;
    let h = HypersurfaceRing::new(ring, &p, weights).map_err(CliError::core_input)?;
    let echo = vec![
        ("P".to_string(), p.to_string()),
        ("weights".to_string(), format!("{}, {}, {}", weights[0], weights[1], weights[2])),
        ("Q".to_string(), q.to_string()),
    ];
    Ok((Structure::Nambu { h: Box::new(h), q }, echo))
}

impl StructureFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let sections = sections(text)?;
        let ring_entries = sections
            .get("ring")
            .ok_or_else(|| CliError::Input("missing [ring] section".into()))?;
        let ring = parse_ring(ring_entries)?;
        let entries = sections
            .get("structure")
            .ok_or_else(|| CliError::Input("missing [structure] section".into()))?;
        let (structure, entries) = match kind_of(entries)? {
            "poisson" => parse_poisson(&ring, entries)?,
            "lie-rinehart" => parse_lie_rinehart(&ring, entries)?,
            "nambu-hypersurface" => parse_nambu(&ring, entries)?,
            other => return Err(CliError::Input(format!("unknown structure kind `{other}`"))),
        };
        Ok(StructureFile {
            ring,
            structure,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poisson_file() {
        let f = StructureFile::parse(
            "[ring]\nvariables = x, y\n\n[structure]\nkind = poisson\n{y,x} = \"x*y\" # reversed\n",
        )
        .unwrap();
        let Structure::Poisson(ps) = &f.structure else { panic!() };
        assert_eq!(ps.entry(0, 1).to_string(), "-x*y");
        assert_eq!(f.entries, vec![("{y,x}".to_string(), "x*y".to_string())]);
    }

    #[test]
    fn lie_rinehart_file() {
        let f = StructureFile::parse(
            "[ring]\nvariables = x, y\n[structure]\nkind = lie-rinehart\ngenerators = a1, a2\n\
             anchor a1 = \"1, 0\"\nanchor a2 = \"0, 1\"\n[a2,a1] = \"0\"\n",
        )
        .unwrap();
        let Structure::LieRinehart(lr) = &f.structure else { panic!() };
        assert_eq!(lr.rank(), 2);
        assert!(lr.validate().passed());
    }

    #[test]
    fn nonlinear_bracket_rejected() {
        let e = StructureFile::parse(
            "[ring]\nvariables = x\n[structure]\nkind = lie-rinehart\ngenerators = a, b\n[a,b] = \"a*b\"\n",
        )
        .unwrap_err();
        assert!(e.to_string().contains("linear"), "{e}");
    }

    #[test]
    fn input_errors() {
        for text in [
            "[structure]\nkind = poisson\n",
            "[ring]\nvariables = x, y\n",
            "[ring]\nvariables = x, y\n[structure]\nkind = poisson\n{x,y} = \"x +\"\n",
            "[ring]\nvariables = x, y\ncharacteristic = 4\n[structure]\nkind = poisson\n",
            "[ring]\nvariables = x, y\n[structure]\nkind = magic\n",
            "[ring]\nvariables = x, y\n[other]\n",
            "x = 1\n",
        ] {
            assert!(matches!(StructureFile::parse(text), Err(CliError::Input(_))), "{text}");
        }
    }
}
