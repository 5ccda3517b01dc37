use std::ffi::{c_char, CStr, CString};
use std::process::Command;
use std::ptr;

use chromatic::verify::fixtures::fixture;
use chromatic_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { chromatic_string_free(s) };
    out
}

fn last_error() -> Option<String> {
    let p = chromatic_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string())
}

fn parse(text: &str) -> Result<*mut ChromaticPicture, ChromaticStatus> {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    match unsafe { chromatic_picture_parse(c.as_ptr(), &mut out) } {
        ChromaticStatus::Ok => Ok(out),
        s => Err(s),
    }
}

#[test]
fn purple_twin_graph() {
    let pic = parse("(0 r r b b (2 r b))").unwrap();
    let mut text = ptr::null_mut();
    assert_eq!(
        unsafe { chromatic_picture_text(pic, &mut text) },
        ChromaticStatus::Ok
    );
    assert_eq!(take(text), "(0 (2 r b) r r b b)");
    let mut graph = ptr::null_mut();
    assert_eq!(
        unsafe { chromatic_graph_build(pic, &mut graph) },
        ChromaticStatus::Ok
    );
    assert!(last_error().is_none());
    unsafe {
        assert_eq!(chromatic_graph_vertex_count(graph), 1);
        assert_eq!(chromatic_graph_edge_count(graph), 1);
        // Two red and two blue roots outside the twin: genus 1 + 1 + 2.
        assert_eq!(chromatic_graph_arithmetic_genus(graph), 4);
    }
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { chromatic_graph_json(graph, &mut json) },
        ChromaticStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(v["edges"][0]["length"], "2");
    let mut dot = ptr::null_mut();
    assert_eq!(
        unsafe { chromatic_graph_dot(graph, &mut dot) },
        ChromaticStatus::Ok
    );
    assert!(take(dot).starts_with("graph dual {"));
    unsafe {
        chromatic_graph_free(graph);
        chromatic_picture_free(pic);
    }
}

#[test]
fn parse_errors_set_status_and_message() {
    assert_eq!(parse("(0 (0 r b) r").unwrap_err(), ChromaticStatus::Parse);
    assert!(last_error().is_some());
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { chromatic_picture_parse(ptr::null(), &mut out) },
        ChromaticStatus::NullArgument
    );
    assert!(out.is_null());
    assert!(last_error().unwrap().contains("text"));
    let bad = [0x28u8, 0xff, 0];
    assert_eq!(
        unsafe { chromatic_picture_parse(bad.as_ptr().cast(), &mut out) },
        ChromaticStatus::InvalidUtf8
    );
    // A later success clears the message.
    let pic = parse("(0 r b)").unwrap();
    assert!(last_error().is_none());
    unsafe { chromatic_picture_free(pic) };
}

#[test]
fn json_getters() {
    let pic = parse("(0 (2 (5 r r) (4 b b)) (3 r b))").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { chromatic_picture_classification_json(pic, &mut s) },
        ChromaticStatus::Ok
    );
    let rows: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 5);
    assert_eq!(
        unsafe { chromatic_picture_check_json(pic, &mut s) },
        ChromaticStatus::Ok
    );
    serde_json::from_str::<serde_json::Value>(&take(s)).unwrap();
    assert_eq!(
        unsafe { chromatic_picture_json(pic, &mut s) },
        ChromaticStatus::Ok
    );
    let round = parse(&take(s)).unwrap();
    assert_eq!(
        unsafe { chromatic_picture_text(round, &mut s) },
        ChromaticStatus::Ok
    );
    assert_eq!(take(s), "(0 (2 (4 b b) (5 r r)) (3 r b))");
    unsafe {
        chromatic_picture_free(round);
        chromatic_picture_free(pic);
    }
}

#[test]
fn frobenius_from_tables() {
    let pic = parse("(0 (3 r r) r b b b)").unwrap();
    let eps = CString::new(r#"{"s1":{"1":1,"2":-1,"h":-1}}"#).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { chromatic_frobenius_json(pic, eps.as_ptr(), ptr::null(), &mut s) },
        ChromaticStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["identity"], false);
    assert_eq!(v["edges"][0]["from"], "L_s1+");
    assert_eq!(v["edges"][0]["to"], "L_s1-");
    let perm = CString::new(r#"{"s1":"R"}"#).unwrap();
    let status = unsafe { chromatic_frobenius_json(pic, ptr::null(), perm.as_ptr(), &mut s) };
    assert_ne!(status, ChromaticStatus::Ok);
    assert!(last_error().is_some());
    unsafe { chromatic_picture_free(pic) };
}

#[test]
fn frobenius_from_polynomials() {
    let json = CString::new(fixture("purple-twin").unwrap().polynomials_for(5).unwrap()).unwrap();
    let frob = |p: u64| {
        let mut pic = ptr::null_mut();
        assert_eq!(
            unsafe { chromatic_picture_from_polynomials(json.as_ptr(), p, &mut pic) },
            ChromaticStatus::Ok,
            "{:?}",
            last_error()
        );
        let mut s = ptr::null_mut();
        assert_eq!(
            unsafe { chromatic_frobenius_json(pic, ptr::null(), ptr::null(), &mut s) },
            ChromaticStatus::Ok
        );
        let eps = CString::new("{}").unwrap();
        assert_eq!(
            unsafe {
                chromatic_frobenius_json(pic, eps.as_ptr(), ptr::null(), &mut ptr::null_mut())
            },
            ChromaticStatus::Frobenius
        );
        unsafe { chromatic_picture_free(pic) };
        serde_json::from_str::<serde_json::Value>(&take(s)).unwrap()
    };
    // 2 is a non-square mod 5 and a square mod 7.
    assert_ne!(frob(0), frob(7));
    assert_eq!(frob(7), frob(17));
}

#[test]
fn arithmetic_errors() {
    let wild = CString::new(fixture("black-twin").unwrap().polynomials_for(3).unwrap()).unwrap();
    let mut pic = ptr::null_mut();
    assert_eq!(
        unsafe { chromatic_picture_from_polynomials(wild.as_ptr(), 0, &mut pic) },
        ChromaticStatus::Arithmetic
    );
    assert!(last_error().unwrap().contains("wild"));
    let junk = CString::new("{").unwrap();
    assert_ne!(
        unsafe { chromatic_picture_from_polynomials(junk.as_ptr(), 0, &mut pic) },
        ChromaticStatus::Ok
    );
    assert!(pic.is_null());
}

#[test]
fn null_handles_are_tolerated() {
    unsafe {
        chromatic_picture_free(ptr::null_mut());
        chromatic_graph_free(ptr::null_mut());
        chromatic_string_free(ptr::null_mut());
        assert_eq!(chromatic_graph_vertex_count(ptr::null()), 0);
        assert_eq!(chromatic_graph_arithmetic_genus(ptr::null()), -1);
        let mut s = ptr::null_mut();
        assert_eq!(
            chromatic_graph_json(ptr::null(), &mut s),
            ChromaticStatus::NullArgument
        );
    }
}

#[test]
fn header_declares_every_export_and_compiles() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let header = std::fs::read_to_string(format!("{dir}/include/chromatic.h")).unwrap();
    let source = std::fs::read_to_string(format!("{dir}/src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for name in exports {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
    let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", "-"])
        .arg(format!("-I{dir}/include"))
        .stdin(std::process::Stdio::piped())
        .spawn()
        .and_then(|mut child| {
            use std::io::Write;
            child.stdin.take().unwrap().write_all(
                b"#include \"chromatic.h\"\nint main(void) { return CHROMATIC_STATUS_OK; }\n",
            )?;
            child.wait_with_output()
        })
    else {
        eprintln!("no C compiler; header syntax not checked");
        return;
    };
    assert!(out.status.success());
}
