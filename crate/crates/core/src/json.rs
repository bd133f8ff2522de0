//! JSON encodings. Labels are always strings, rationals are strings `"p/q"`,
//! and every encoder emits keys and terms in a fixed order so output is
//! byte-stable.

use serde_json::{json, Map, Value};

use crate::adjoint::{Arrangement, ChamberFunctional, ChamberTensor, SteinmannRelation};
use crate::braid::PwcFunction;
use crate::composition::{SetComposition, SetPartition};
use crate::error::{Error, Result};
use crate::labels::{natural_cmp, GroundSet, LabelSet};
use crate::preposet::{AdjointFamily, Preposet, TwoBlock};
use crate::rational::{self, Rational};
use crate::sigma::{Basis, Element, TensorElement};
use crate::zie::{DualBasis, Tree, ZieDualElement, ZieElement, ZieTensor};

fn bad(what: &str, v: &Value) -> Error {
    let mut shown = v.to_string();
    if shown.len() > 80 {
        shown.truncate(77);
        shown.push_str("...");
    }
    Error::Parse(format!("expected {what}, got {shown}"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what, v))
}

fn string<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(what, v))
}

/// A label may be written as a string or a non-negative integer.
fn label(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_u64() => Ok(n.to_string()),
        _ => Err(bad("a label", v)),
    }
}

pub fn parse_value(text: &str) -> Result<Value> {
    Ok(serde_json::from_str(text)?)
}

pub fn rational(r: &Rational) -> Value {
    Value::String(rational::format(r))
}

pub fn parse_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => rational::parse(s),
        Value::Number(n) if n.is_i64() => Ok(rational::int(n.as_i64().unwrap())),
        _ => Err(bad("a rational string", v)),
    }
}

pub fn labels(g: &GroundSet, s: LabelSet) -> Value {
    Value::from(g.names(s))
}

pub fn parse_labels(g: &GroundSet, v: &Value) -> Result<LabelSet> {
    let names = array(v, "a list of labels")?.iter().map(label).collect::<Result<Vec<_>>>()?;
    g.set_of(&names)
}

/// Every label mentioned under a `ground`/`grounds` key anywhere in `v`, or
/// every label of a bare composition or tree, deduplicated, in natural order.
pub fn mentioned_labels(v: &Value) -> Vec<String> {
    fn walk(v: &Value, out: &mut Vec<String>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    match k.as_str() {
                        "ground" => collect(x, out),
                        "grounds" => x.as_array().into_iter().flatten().for_each(|y| collect(y, out)),
                        _ => walk(x, out),
                    }
                }
            }
            Value::Array(xs) => xs.iter().for_each(|x| walk(x, out)),
            _ => {}
        }
    }
    fn collect(v: &Value, out: &mut Vec<String>) {
        if let Some(xs) = v.as_array() {
            out.extend(xs.iter().filter_map(|x| label(x).ok()));
        }
    }
    fn leaves(v: &Value, out: &mut Vec<String>) {
        match v {
            Value::Array(xs) => xs.iter().for_each(|x| leaves(x, out)),
            x => out.extend(label(x).ok()),
        }
    }
    let mut out = Vec::new();
    walk(v, &mut out);
    if v.is_array() {
        leaves(v, &mut out);
    }
    out.sort_by(|a, b| natural_cmp(a, b));
    out.dedup();
    out
}

/// The ground set spanned by the labels mentioned in `inputs`.
pub fn infer_ground(inputs: &[&Value]) -> Result<GroundSet> {
    let mut names: Vec<String> = inputs.iter().flat_map(|v| mentioned_labels(v)).collect();
    names.sort_by(|a, b| natural_cmp(a, b));
    names.dedup();
    GroundSet::new(names)
}

pub fn composition(g: &GroundSet, f: &SetComposition) -> Value {
    Value::from(f.names(g))
}

pub fn parse_composition(g: &GroundSet, v: &Value) -> Result<SetComposition> {
    let lumps = array(v, "a composition (list of lists of labels)")?
        .iter()
        .map(|l| parse_labels(g, l))
        .collect::<Result<Vec<_>>>()?;
    SetComposition::new(lumps)
}

/// Blocks sorted by their least label, labels sorted within each block.
pub fn partition(g: &GroundSet, p: &SetPartition) -> Value {
    Value::from(p.names(g))
}

pub fn preposet(g: &GroundSet, p: &Preposet) -> Value {
    let pairs: Vec<Value> =
        p.pairs().into_iter().filter(|(i, j)| i != j).map(|(i, j)| json!([g.label(i), g.label(j)])).collect();
    json!({ "ground": labels(g, p.ground()), "pairs": pairs })
}

/// The transitive closure of the listed pairs.
pub fn parse_preposet(g: &GroundSet, v: &Value) -> Result<Preposet> {
    let ground = parse_labels(g, field(v, "ground")?)?;
    let mut pairs = Vec::new();
    for pr in array(field(v, "pairs")?, "a list of pairs")? {
        let xs = array(pr, "a pair of labels")?;
        if xs.len() != 2 {
            return Err(bad("a pair of labels", pr));
        }
        pairs.push((g.index_of(&label(&xs[0])?)?, g.index_of(&label(&xs[1])?)?));
    }
    Preposet::closure(ground, pairs)
}

pub fn two_block(g: &GroundSet, b: &TwoBlock) -> Value {
    json!({ "S": labels(g, b.s()), "T": labels(g, b.t()) })
}

pub fn parse_two_block(g: &GroundSet, v: &Value) -> Result<TwoBlock> {
    TwoBlock::new(parse_labels(g, field(v, "S")?)?, parse_labels(g, field(v, "T")?)?)
}

pub fn adjoint_family(g: &GroundSet, a: &AdjointFamily) -> Value {
    let members: Vec<Value> = a.iter().map(|b| two_block(g, b)).collect();
    json!({ "ground": labels(g, a.ground()), "members": members })
}

fn terms_json<'a, I>(g: &GroundSet, it: I) -> Value
where
    I: IntoIterator<Item = (&'a SetComposition, &'a Rational)>,
{
    Value::from(
        it.into_iter().map(|(f, c)| json!({ "key": composition(g, f), "coeff": rational(c) })).collect::<Vec<_>>(),
    )
}

fn parse_terms(g: &GroundSet, v: &Value) -> Result<Vec<(SetComposition, Rational)>> {
    array(field(v, "terms")?, "a list of terms")?
        .iter()
        .map(|t| Ok((parse_composition(g, field(t, "key")?)?, parse_rational(field(t, "coeff")?)?)))
        .collect()
}

pub fn element(g: &GroundSet, x: &Element) -> Value {
    json!({ "ground": labels(g, x.ground()), "basis": x.basis().name(), "terms": terms_json(g, x.iter()) })
}

pub fn parse_element(g: &GroundSet, v: &Value) -> Result<Element> {
    let ground = parse_labels(g, field(v, "ground")?)?;
    let basis = Basis::parse(string(field(v, "basis")?, "a basis name")?)?;
    Element::from_terms(ground, basis, parse_terms(g, v)?)
}

pub fn tensor(g: &GroundSet, t: &TensorElement) -> Value {
    let grounds: Vec<Value> = t.grounds().iter().map(|&s| labels(g, s)).collect();
    let terms: Vec<Value> = t
        .iter()
        .map(|(ks, c)| {
            let keys: Vec<Value> = ks.iter().map(|k| composition(g, k)).collect();
            json!({ "keys": keys, "coeff": rational(c) })
        })
        .collect();
    json!({ "grounds": grounds, "basis": t.basis().name(), "terms": terms })
}

pub fn pwc(g: &GroundSet, p: &PwcFunction) -> Value {
    json!({ "ground": labels(g, p.ground()), "basis": "Mhat", "terms": terms_json(g, p.coeffs()) })
}

pub fn parse_pwc(g: &GroundSet, v: &Value) -> Result<PwcFunction> {
    let ground = parse_labels(g, field(v, "ground")?)?;
    let basis = string(field(v, "basis")?, "a basis name")?;
    if basis != "Mhat" {
        return Err(Error::Parse(format!("expected basis \"Mhat\", got {basis:?}")));
    }
    PwcFunction::from_coeffs(ground, parse_terms(g, v)?)
}

/// Leaves are label lists, nodes are `[left, right]`.
pub fn tree(g: &GroundSet, t: &Tree) -> Value {
    match t {
        Tree::Leaf(l) => labels(g, *l),
        Tree::Node(a, b) => Value::from(vec![tree(g, a), tree(g, b)]),
    }
}

pub fn parse_tree(g: &GroundSet, v: &Value) -> Result<Tree> {
    let xs = array(v, "a tree")?;
    if xs.iter().all(|x| !x.is_array()) {
        return Tree::leaf(parse_labels(g, v)?);
    }
    if xs.len() != 2 || !xs.iter().all(Value::is_array) {
        return Err(bad("a leaf (list of labels) or a node [left, right]", v));
    }
    Tree::node(parse_tree(g, &xs[0])?, parse_tree(g, &xs[1])?)
}

/// A Lie element in the comb basis: `key` is the composition `F` of `[F]`.
pub fn zie(g: &GroundSet, z: &ZieElement) -> Value {
    json!({ "ground": labels(g, z.ground()), "basis": "comb", "terms": terms_json(g, z.terms()) })
}

/// Accepts the comb form written by [`zie`], a combination of trees
/// `{"ground", "trees": [{"tree", "coeff"}]}`, or a bare tree.
pub fn parse_zie(g: &GroundSet, v: &Value) -> Result<ZieElement> {
    if v.is_array() {
        return crate::zie::reduce(&parse_tree(g, v)?);
    }
    let ground = parse_labels(g, field(v, "ground")?)?;
    if let Some(trees) = v.get("trees") {
        let terms = array(trees, "a list of trees")?
            .iter()
            .map(|t| Ok((parse_tree(g, field(t, "tree")?)?, parse_rational(field(t, "coeff")?)?)))
            .collect::<Result<Vec<_>>>()?;
        return crate::zie::reduce_combination(ground, &terms);
    }
    let basis = string(field(v, "basis")?, "a basis name")?;
    if basis != "comb" {
        return Err(Error::Parse(format!("expected basis \"comb\", got {basis:?}")));
    }
    ZieElement::from_terms(ground, parse_terms(g, v)?)
}

pub fn zie_dual(g: &GroundSet, d: &ZieDualElement) -> Value {
    json!({ "ground": labels(g, d.ground()), "basis": d.basis().to_string(), "terms": terms_json(g, d.terms()) })
}

pub fn parse_zie_dual(g: &GroundSet, v: &Value) -> Result<ZieDualElement> {
    let ground = parse_labels(g, field(v, "ground")?)?;
    let basis = DualBasis::parse(string(field(v, "basis")?, "a basis name")?)?;
    ZieDualElement::from_terms(ground, basis, parse_terms(g, v)?)
}

pub fn zie_tensor(g: &GroundSet, t: &ZieTensor) -> Value {
    let (s, u) = t.grounds();
    let terms: Vec<Value> = t
        .terms()
        .iter()
        .map(|((a, b), c)| json!({ "keys": [composition(g, a), composition(g, b)], "coeff": rational(c) }))
        .collect();
    json!({ "grounds": [labels(g, s), labels(g, u)], "basis": "p", "terms": terms })
}

/// Hyperplanes of the arrangement, each as the label list of its `S`.
pub fn hyperplanes(g: &GroundSet, arr: &Arrangement) -> Value {
    Value::from(arr.hyperplanes().iter().map(|&s| labels(g, s)).collect::<Vec<_>>())
}

pub fn chamber(arr: &Arrangement, id: usize) -> Value {
    let c = arr.chamber(id);
    let witness: Vec<Value> = c.witness().coords().iter().map(rational).collect();
    json!({ "id": id, "signs": arr.sign_string(id), "witness": witness })
}

/// Nonzero values only, keyed by sign string in chamber order.
pub fn functional(g: &GroundSet, arr: &Arrangement, f: &ChamberFunctional) -> Value {
    let mut values = Map::new();
    for (id, v) in f.values().iter().enumerate() {
        if !num::Zero::is_zero(v) {
            values.insert(arr.sign_string(id), rational(v));
        }
    }
    json!({ "ground": labels(g, f.ground()), "values": Value::Object(values) })
}

/// Chambers not listed are 0.
pub fn parse_functional(arr: &Arrangement, v: &Value) -> Result<ChamberFunctional> {
    let mut values = vec![Rational::from_integer(0.into()); arr.len()];
    let m = field(v, "values")?.as_object().ok_or_else(|| bad("an object of chamber values", v))?;
    for (signs, x) in m {
        let id = arr.find(signs)?;
        values[id] = parse_rational(x)?;
    }
    ChamberFunctional::new(arr, values)
}

pub fn chamber_tensor(g: &GroundSet, arr_s: &Arrangement, arr_t: &Arrangement, t: &ChamberTensor) -> Value {
    let (s, u) = t.grounds();
    let mut terms = Vec::new();
    for (i, row) in t.values().iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !num::Zero::is_zero(v) {
                terms.push(json!({ "chambers": [arr_s.sign_string(i), arr_t.sign_string(j)], "value": rational(v) }));
            }
        }
    }
    json!({ "grounds": [labels(g, s), labels(g, u)], "terms": terms })
}

pub fn relation(g: &GroundSet, arr: &Arrangement, r: &SteinmannRelation) -> Value {
    let (a, b) = r.hyperplanes;
    let terms: Vec<Value> =
        r.terms.iter().map(|&(id, s)| json!({ "chamber": arr.sign_string(id), "sign": s })).collect();
    json!({ "hyperplanes": [labels(g, arr.hyperplanes()[a]), labels(g, arr.hyperplanes()[b])], "terms": terms })
}

/// `{"S": [...], "T": [...]}` or a bare list giving `S`.
pub fn parse_split(g: &GroundSet, v: &Value) -> Result<LabelSet> {
    if v.is_array() {
        return parse_labels(g, v);
    }
    Ok(parse_two_block(g, v)?.s())
}
