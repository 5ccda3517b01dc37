//! C interface. Every fallible function returns a [`ChromaticStatus`]; on
//! failure the message is available from [`chromatic_last_error`] on the
//! same thread. Strings handed out must be released with
//! [`chromatic_string_free`], handles with their own free function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use chromatic::arithmetic::{build_picture, ArithmeticContext, PolynomialInput};
use chromatic::classify::Classification;
use chromatic::frobenius::{act_traced, ClusterMap, EpsilonTable, FrobeniusAction};
use chromatic::model::{build_classified, DualGraph};
use chromatic::picture::ChromaticClusterPicture;
use chromatic::verify::check_graph;
use chromatic::Error;

type ActionFn<'a> = Box<dyn Fn(&Classification<'_>) -> chromatic::Result<FrobeniusAction> + 'a>;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChromaticStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Malformed picture text or JSON.
    Parse = 3,
    /// The picture is valid but has no dual graph here.
    Model = 4,
    /// Polynomial input rejected or roots could not be separated.
    Arithmetic = 5,
    /// Frobenius data missing, undefined or inconsistent.
    Frobenius = 6,
    /// Internal failure; the message has details.
    Panic = 7,
}

/// A chromatic cluster picture, with the arithmetic data when it was built
/// from polynomials.
pub struct ChromaticPicture {
    picture: ChromaticClusterPicture,
    context: Option<Box<ArithmeticContext>>,
}

/// A dual graph.
pub struct ChromaticGraph {
    graph: DualGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ChromaticStatus {
    match e {
        Error::Syntax { .. }
        | Error::NonPositiveDepth { .. }
        | Error::SingleChild { .. }
        | Error::MissingColour { .. }
        | Error::MonochromePicture { .. }
        | Error::Json(_) => ChromaticStatus::Parse,
        Error::Unsupported(_)
        | Error::PolynomialInput(_)
        | Error::SharedRoot { .. }
        | Error::Indistinguishable { .. }
        | Error::Inseparable(_)
        | Error::NotUnit(_) => ChromaticStatus::Arithmetic,
        Error::UndefinedEpsilon { .. }
        | Error::EpsilonPrecondition { .. }
        | Error::MissingEpsilon(_)
        | Error::InconsistentEpsilon(_)
        | Error::NotAutomorphism(_) => ChromaticStatus::Frobenius,
        _ => ChromaticStatus::Model,
    }
}

/// Runs `f`, converting errors and panics into a status and last-error text.
fn guard(f: impl FnOnce() -> Result<(), (ChromaticStatus, String)>) -> ChromaticStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            ChromaticStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(message);
            ChromaticStatus::Panic
        }
    }
}

fn domain(e: Error) -> (ChromaticStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (ChromaticStatus, String) {
    (ChromaticStatus::NullArgument, format!("{name} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, (ChromaticStatus, String)> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (ChromaticStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn read_opt_str<'a>(
    p: *const c_char,
    name: &str,
) -> Result<Option<&'a str>, (ChromaticStatus, String)> {
    if p.is_null() {
        Ok(None)
    } else {
        read_str(p, name).map(Some)
    }
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (ChromaticStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c =
        CString::new(s).map_err(|_| (ChromaticStatus::Panic, "output contains nul".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> Result<(), (ChromaticStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn picture_ref<'a>(
    p: *const ChromaticPicture,
) -> Result<&'a ChromaticPicture, (ChromaticStatus, String)> {
    p.as_ref().ok_or_else(|| null("picture"))
}

/// Message of the last failed call on this thread, or null after a
/// successful call. Owned by the library; valid until the next call.
#[no_mangle]
pub extern "C" fn chromatic_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a picture from its text form, e.g. `(0 (2 r b) r r b b)`, or
/// from JSON.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chromatic_picture_parse(
    text: *const c_char,
    out: *mut *mut ChromaticPicture,
) -> ChromaticStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let picture = if text.trim_start().starts_with('{') {
            ChromaticClusterPicture::from_json(text)
        } else {
            ChromaticClusterPicture::parse(text)
        }
        .map_err(domain)?;
        write_handle(
            out,
            ChromaticPicture {
                picture,
                context: None,
            },
        )
    })
}

/// Builds the picture of a polynomial input (JSON). A nonzero `p`
/// overrides the prime given in the JSON.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chromatic_picture_from_polynomials(
    json: *const c_char,
    p: u64,
    out: *mut *mut ChromaticPicture,
) -> ChromaticStatus {
    guard(|| {
        let json = read_str(json, "json")?;
        let input = if p == 0 {
            PolynomialInput::from_json(json)
        } else {
            PolynomialInput::from_json_with_prime(json, p)
        }
        .map_err(domain)?;
        let ctx = build_picture(&input).map_err(domain)?;
        write_handle(
            out,
            ChromaticPicture {
                picture: ctx.picture().clone(),
                context: Some(Box::new(ctx)),
            },
        )
    })
}

/// Canonical text form of the picture.
///
/// # Safety
/// `picture` must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn chromatic_picture_text(
    picture: *const ChromaticPicture,
    out: *mut *mut c_char,
) -> ChromaticStatus {
    guard(|| write_string(out, picture_ref(picture)?.picture.to_text()))
}

/// Picture as JSON.
///
/// # Safety
/// `picture` must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn chromatic_picture_json(
    picture: *const ChromaticPicture,
    out: *mut *mut c_char,
) -> ChromaticStatus {
    guard(|| write_string(out, picture_ref(picture)?.picture.to_json()))
}

/// Per-cluster classification table as JSON.
///
/// # Safety
/// `picture` must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn chromatic_picture_classification_json(
    picture: *const ChromaticPicture,
    out: *mut *mut c_char,
) -> ChromaticStatus {
    guard(|| {
        let pic = &picture_ref(picture)?.picture;
        write_string(out, Classification::new(pic).to_json())
    })
}

/// Structural check report as JSON; the call succeeds even when checks fail.
///
/// # Safety
/// `picture` must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn chromatic_picture_check_json(
    picture: *const ChromaticPicture,
    out: *mut *mut c_char,
) -> ChromaticStatus {
    guard(|| write_string(out, check_graph(&picture_ref(picture)?.picture).to_json()))
}

/// Builds the dual graph of the picture.
///
/// # Safety
/// `picture` must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn chromatic_graph_build(
    picture: *const ChromaticPicture,
    out: *mut *mut ChromaticGraph,
) -> ChromaticStatus {
    guard(|| {
        let pic = &picture_ref(picture)?.picture;
        let graph = build_classified(&Classification::new(pic)).map_err(domain)?;
        write_handle(out, ChromaticGraph { graph })
    })
}

/// Graph as JSON.
///
/// # Safety
/// `graph` must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn chromatic_graph_json(
    graph: *const ChromaticGraph,
    out: *mut *mut c_char,
) -> ChromaticStatus {
    guard(|| {
        let g = graph.as_ref().ok_or_else(|| null("graph"))?;
        write_string(out, g.graph.to_json())
    })
}

/// Graph as DOT.
///
/// # Safety
/// `graph` must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn chromatic_graph_dot(
    graph: *const ChromaticGraph,
    out: *mut *mut c_char,
) -> ChromaticStatus {
    guard(|| {
        let g = graph.as_ref().ok_or_else(|| null("graph"))?;
        write_string(out, g.graph.to_dot())
    })
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn chromatic_graph_vertex_count(graph: *const ChromaticGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.vertices.len())
}

/// Number of edges (chains and loops), or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn chromatic_graph_edge_count(graph: *const ChromaticGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.edges.len())
}

/// Sum of the vertex genera plus the first Betti number, or -1 for a null
/// handle.
///
/// # Safety
/// `graph` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn chromatic_graph_arithmetic_genus(graph: *const ChromaticGraph) -> i64 {
    graph
        .as_ref()
        .map_or(-1, |g| g.graph.total_genus() as i64 + g.graph.betti())
}

/// Frobenius automorphism of the picture's dual graph as JSON. For a
/// picture built from polynomials `eps_json` and `perm_json` must be null
/// and the action is computed; otherwise they give the ε table and cluster
/// permutation (null means all +1 and the identity).
///
/// # Safety
/// `picture` must come from this library; string arguments must be null or
/// nul-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn chromatic_frobenius_json(
    picture: *const ChromaticPicture,
    eps_json: *const c_char,
    perm_json: *const c_char,
    out: *mut *mut c_char,
) -> ChromaticStatus {
    guard(|| {
        let handle = picture_ref(picture)?;
        let eps = read_opt_str(eps_json, "eps_json")?;
        let perm = read_opt_str(perm_json, "perm_json")?;
        let (pic, action_of): (&ChromaticClusterPicture, ActionFn<'_>) = match &handle.context {
            Some(ctx) => {
                if eps.is_some() || perm.is_some() {
                    return Err((
                        ChromaticStatus::Frobenius,
                        "eps and perm apply to pictures without polynomial data".into(),
                    ));
                }
                (ctx.picture(), Box::new(|cls| ctx.action(cls)))
            }
            None => {
                let pic = &handle.picture;
                (
                    pic,
                    Box::new(move |_| {
                        Ok(FrobeniusAction {
                            perm: match perm {
                                Some(t) => ClusterMap::from_json(pic, t)?,
                                None => ClusterMap::identity(),
                            },
                            eps: match eps {
                                Some(t) => EpsilonTable::from_json(pic, t)?,
                                None => EpsilonTable::trivial(pic),
                            },
                        })
                    }),
                )
            }
        };
        let cls = Classification::new(pic);
        let graph = build_classified(&cls).map_err(domain)?;
        let action = action_of(&cls).map_err(domain)?;
        let (auto, trace) = act_traced(&cls, &graph, &action).map_err(domain)?;
        write_string(out, auto.to_json(&graph, Some(&trace)))
    })
}

/// Releases a picture handle. Null is ignored.
///
/// # Safety
/// `picture` must be null or come from this library, and not be used again.
#[no_mangle]
pub unsafe extern "C" fn chromatic_picture_free(picture: *mut ChromaticPicture) {
    if !picture.is_null() {
        drop(Box::from_raw(picture));
    }
}

/// Releases a graph handle. Null is ignored.
///
/// # Safety
/// `graph` must be null or come from this library, and not be used again.
#[no_mangle]
pub unsafe extern "C" fn chromatic_graph_free(graph: *mut ChromaticGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn chromatic_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
