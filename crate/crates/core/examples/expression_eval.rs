//! Parses and evaluates free-function expressions.
//!
//! cargo run --example expression_eval -- "exp(-(t - s)) * sin(s)^2" 0.5 2

use evoalg::expr;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let text = args
        .first()
        .map_or("2^-s * cos(t) + sqrt(abs(s - t))", String::as_str);
    let s: f64 = args.get(1).and_then(|v| v.parse().ok()).unwrap_or(1.0);
    let t: f64 = args.get(2).and_then(|v| v.parse().ok()).unwrap_or(2.0);
    match expr::parse(text) {
        Ok(e) => {
            println!("parsed:   {e}");
            println!("explicit: {}", e.render_explicit());
            match e.eval(s, t) {
                Ok(v) => println!("value at s={s}, t={t}: {v}"),
                Err(err) => println!("evaluation failed: {err}"),
            }
        }
        Err(err) => println!("{err}"),
    }
}
