//! Drives the command line in-process: construct, analyze, verify.

use binormal::cli::run;

fn main() {
    let dir = std::env::temp_dir().join("binormal-pipeline");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let geo = dir.join("square.json");
    let report = dir.join("square.report.json");
    std::fs::write(&geo, r#"{"dim":2,"vertices":[[0,0],[1,0],[1,1],[0,1]],"name":"square"}"#).expect("write");

    let mut out = Vec::new();
    let mut err = Vec::new();
    let p = |p: &std::path::Path| p.display().to_string();
    let steps: Vec<Vec<String>> = vec![
        vec!["normals".into(), "--in".into(), p(&geo), "--out".into(), p(&report)],
        vec!["analyze".into(), "--report".into(), p(&report)],
        vec!["verify".into(), "--report".into(), p(&report), "--in".into(), p(&geo)],
    ];
    for args in steps {
        out.clear();
        let code = run(std::iter::once("binormal".to_string()).chain(args.clone()), &mut out, &mut err);
        println!("{} -> exit {code}, {} bytes of report", args[0], out.len());
    }
    print!("{}", String::from_utf8_lossy(&err));
}
