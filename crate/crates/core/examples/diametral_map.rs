use binormal::analysis::diametral_map_d1;
use binormal::smooth::SupportBody;
use binormal::Result;

fn main() -> Result<()> {
    for spec in ["ellipse:2,1", "perturbed:1,0.05,3"] {
        let body = SupportBody::parse(spec)?;
        let m = diametral_map_d1(&body, 360)?;
        println!("{spec}: monotone {}, {} affine diameters sampled", m.monotone, m.affine_diameters.len());
        for i in (0..m.tail_params.len()).step_by(90) {
            println!("  {:.4} -> {:.4}", m.tail_params[i], m.head_params[i]);
        }
    }
    Ok(())
}
