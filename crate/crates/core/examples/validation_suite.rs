// The validation suite at the quick scale, written to a temporary directory.

use cayley_walks::report::Format;
use cayley_walks::validate::{run_validation, Scale, ValidateOptions};

pub fn run_example() -> cayley_walks::Result<()> {
    let opts = ValidateOptions {
        scale: Scale::Quick,
        ..ValidateOptions::default()
    };
    let v = run_validation(&opts)?;
    print!("{}", v.summary());
    let dir = std::env::temp_dir().join("cayley-walks-validate");
    let files = v.write(&dir, Format::Csv)?;
    println!("{} files in {}", files.len(), dir.display());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("validation example");
}
