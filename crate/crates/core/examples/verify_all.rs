use mvk::verifier::{Bounds, Standard, Suite};

fn main() {
    let bounds = Bounds::default();
    for suite in Suite::ALL {
        println!("{}", suite.run(&Standard, &bounds));
    }
}
