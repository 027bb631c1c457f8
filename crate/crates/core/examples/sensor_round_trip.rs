// Round trip along a sensor line with release times.

use std::error::Error;

use flowsched::wireless_distribution::{
    sensor_duration, sensor_duration_general, sensor_duration_uniform, SensorPathInstance, SensorRegime,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let uniform = SensorPathInstance::new(vec![0.0, 1.0, 2.0], 1.0, vec![0.0, 5.0, 5.0], vec![0.0, 1.0, 1.0], SensorRegime::UniformDp)?;
    let plan = sensor_duration_uniform(&uniform, 1.0)?;
    println!("uniform: Tmin {} total {}", plan.tmin, plan.total);
    assert_eq!((plan.tmin, plan.total), (3.0, 9.0));

    let general = SensorPathInstance { regime: SensorRegime::GeneralInteger, ..uniform };
    assert_eq!(sensor_duration_general(&general)?.total, plan.total);

    let x = vec![0.0, 2.0, 3.0, 5.0, 8.0];
    let inst = SensorPathInstance::new(x, 1.0, vec![0.0, 1.0, 6.0, 9.0, 12.0], vec![0.0, 2.0, 1.0, 3.0, 1.0], SensorRegime::GeneralInteger)?;
    let (tmin, total) = sensor_duration(&inst)?;
    println!("general: Tmin {tmin} total {total}");
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
