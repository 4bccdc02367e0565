//! How often do the criteria certify a random relator?

use orsolv::survey::{run_survey, SamplingMode, SurveyConfig};

fn main() {
    for length in [4, 8, 12] {
        let cfg = SurveyConfig {
            length,
            count: 500,
            seed: 42,
            gens: 2,
            mode: SamplingMode::Reduced,
        };
        println!("{}", run_survey(&cfg));
    }
}
