//! C interface to the `mactt` library.
//!
//! Objects cross the boundary as opaque handles that the caller frees with the
//! matching `_free` function. Strings returned through out-parameters are owned
//! by the caller and released with [`mactt_string_free`].

use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;
use std::sync::Arc;

use mactt::hfcore::{hf_compare, parse_formula, parse_literal, separation, Env, HfSet};
use mactt::kan::{is_acyclic_fibration, is_fibration};
use mactt::sset::{parse_sset_document, terminal_sset, SSetDocument, SimplicialMap};

mod status;

use status::{fail, guard, Failure};
pub use status::{mactt_last_error, MacttStatus};

/// A hereditarily finite set.
pub struct MacttSet(HfSet);

/// A parsed simplicial set document with its objects and maps.
pub struct MacttDocument(SSetDocument);

fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return fail(MacttStatus::NullArgument, format!("{what} is null"));
    }
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .or_else(|_| fail(MacttStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn optional_text<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, what).map(Some)
    }
}

fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    unsafe { p.as_ref() }.map_or_else(|| fail(MacttStatus::NullArgument, format!("{what} is null")), Ok)
}

fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return fail(MacttStatus::NullArgument, "output pointer is null");
    }
    unsafe { out.write(value) };
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap().into_raw()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mactt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a set literal such as `{#0,{#1}}` or `#3`.
///
/// # Safety
/// `literal` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mactt_set_parse(literal: *const c_char, out: *mut *mut MacttSet) -> MacttStatus {
    guard(|| {
        let set = parse_literal(text(literal, "literal")?)?;
        write_out(out, Box::into_raw(Box::new(MacttSet(set))))
    })
}

/// The set with the given Ackermann code.
#[no_mangle]
pub extern "C" fn mactt_set_from_code(code: u64) -> *mut MacttSet {
    Box::into_raw(Box::new(MacttSet(HfSet::from_ackermann(code))))
}

/// # Safety
/// `set` must be null or a handle from this library that is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mactt_set_free(set: *mut MacttSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Number of members, or 0 for null.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mactt_set_cardinality(set: *const MacttSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.len())
}

/// Compares two sets in the canonical order: negative, zero or positive.
///
/// # Safety
/// Both arguments must be live handles.
#[no_mangle]
pub unsafe extern "C" fn mactt_set_compare(a: *const MacttSet, b: *const MacttSet) -> c_int {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => hf_compare(&a.0, &b.0) as c_int,
        _ => 0,
    }
}

/// Whether `x` is a member of `set`. False if either is null.
///
/// # Safety
/// Both arguments must be null or live handles.
#[no_mangle]
pub unsafe extern "C" fn mactt_set_contains(set: *const MacttSet, x: *const MacttSet) -> bool {
    match (set.as_ref(), x.as_ref()) {
        (Some(s), Some(x)) => s.0.contains(&x.0),
        _ => false,
    }
}

/// Canonical literal of `set`.
///
/// # Safety
/// `set` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mactt_set_to_string(set: *const MacttSet, out: *mut *mut c_char) -> MacttStatus {
    guard(|| {
        let set = handle(set, "set")?;
        write_out(out, owned_string(set.0.to_string()))
    })
}

/// Members `x` of `from` satisfying a bounded formula in the free variable `var`.
///
/// # Safety
/// String arguments must be valid C strings, `from` a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mactt_separation(
    formula: *const c_char,
    var: *const c_char,
    from: *const MacttSet,
    out: *mut *mut MacttSet,
) -> MacttStatus {
    guard(|| {
        let phi = parse_formula(text(formula, "formula")?)?;
        let var = text(var, "variable")?;
        let from = handle(from, "set")?;
        let result = separation(&from.0, var, &phi, &Env::new())?;
        write_out(out, Box::into_raw(Box::new(MacttSet(result))))
    })
}

/// Parses the text of a `.sset` document.
///
/// # Safety
/// `source` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mactt_document_parse(source: *const c_char, out: *mut *mut MacttDocument) -> MacttStatus {
    guard(|| {
        let doc = parse_sset_document(text(source, "source")?)?;
        write_out(out, Box::into_raw(Box::new(MacttDocument(doc))))
    })
}

/// # Safety
/// `doc` must be null or a handle from this library that is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mactt_document_free(doc: *mut MacttDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Number of objects in the document, or 0 for null.
///
/// # Safety
/// `doc` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mactt_document_object_count(doc: *const MacttDocument) -> usize {
    doc.as_ref().map_or(0, |d| d.0.objects.len())
}

/// Number of maps in the document, or 0 for null.
///
/// # Safety
/// `doc` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mactt_document_map_count(doc: *const MacttDocument) -> usize {
    doc.as_ref().map_or(0, |d| d.0.maps.len())
}

/// Number of `n`-simplices of the named object.
///
/// # Safety
/// `doc` must be a live handle, `object` a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mactt_document_simplex_count(
    doc: *const MacttDocument,
    object: *const c_char,
    n: usize,
    out: *mut usize,
) -> MacttStatus {
    guard(|| {
        let doc = handle(doc, "document")?;
        let name = text(object, "object name")?;
        let Some(x) = doc.0.object(name) else {
            return fail(MacttStatus::NotFound, format!("no object named `{name}`"));
        };
        if n > x.truncation() {
            return Err(mactt::Error::Truncation {
                dim: n,
                truncation: x.truncation(),
            }
            .into());
        }
        write_out(out, x.count(n))
    })
}

fn chosen_map(doc: &SSetDocument, name: Option<&str>) -> Result<SimplicialMap, Failure> {
    if let Some(name) = name {
        return doc
            .map(name)
            .cloned()
            .map_or_else(|| fail(MacttStatus::NotFound, format!("no map named `{name}`")), Ok);
    }
    match (doc.maps.as_slice(), doc.objects.as_slice()) {
        ([(_, f)], _) => Ok(f.clone()),
        ([], [(_, x)]) => {
            let pt = Arc::new(terminal_sset(x.truncation()));
            let carrier = (0..x.len()).map(|s| x.dim(s)).collect();
            Ok(SimplicialMap::new(x.clone(), pt, carrier)?)
        }
        _ => fail(MacttStatus::NotFound, "name a map: the document has none or several"),
    }
}

/// Checks the lifting property of a map against horns, or against boundaries
/// when `acyclic` is set, in dimensions up to `nmax`.
///
/// With a null `map_name` the document's only map is used, or the map from its
/// only object to the point. When the check fails and `witness` is not null it
/// receives a description of the first square without a lift; otherwise it
/// receives null.
///
/// # Safety
/// `doc` must be a live handle, `map_name` null or a valid C string, `holds` a
/// valid pointer and `witness` null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mactt_kan_check(
    doc: *const MacttDocument,
    map_name: *const c_char,
    acyclic: bool,
    nmax: usize,
    holds: *mut bool,
    witness: *mut *mut c_char,
) -> MacttStatus {
    guard(|| {
        let doc = handle(doc, "document")?;
        let f = chosen_map(&doc.0, optional_text(map_name, "map name")?)?;
        let check = if acyclic {
            is_acyclic_fibration(&f, nmax)?
        } else {
            is_fibration(&f, nmax)?
        };
        write_out(holds, check.holds())?;
        if !witness.is_null() {
            let text = check.witness.map(|w| owned_string(w.display(&f).to_string()));
            witness.write(text.unwrap_or(ptr::null_mut()));
        }
        Ok(())
    })
}

/// Runs the command line tool in-process.
///
/// `argv` holds `argc` arguments without the program name. Standard output and
/// standard error are returned as strings in `out` and `err`, which may be null
/// to discard them, and the exit code in `code`.
///
/// # Safety
/// `argv` must point to `argc` valid C strings and `code` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mactt_cli_run(
    argc: usize,
    argv: *const *const c_char,
    out: *mut *mut c_char,
    err: *mut *mut c_char,
    code: *mut c_int,
) -> MacttStatus {
    guard(|| {
        if argc > 0 && argv.is_null() {
            return fail(MacttStatus::NullArgument, "argv is null");
        }
        let mut args = vec!["mactt".to_string()];
        for i in 0..argc {
            args.push(text(*argv.add(i), "argument")?.to_string());
        }
        let env = std::env::var("MACTT_TRUNCATION").ok();
        let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
        let exit = mactt::cli::run_with(args, env.as_deref(), &mut stdout, &mut stderr);
        write_out(code, exit)?;
        for (target, bytes) in [(out, stdout), (err, stderr)] {
            if !target.is_null() {
                target.write(owned_string(String::from_utf8_lossy(&bytes).into_owned()));
            }
        }
        Ok(())
    })
}
