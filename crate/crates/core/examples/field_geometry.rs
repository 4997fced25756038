//! Absolute values, balls and coset enumeration on Q_2 and on Q_2^2 seen as
//! the degree-2 unramified extension.

use vladimirov::field::{haar_measure, BallSpec, CosetGrid, FieldParams, Point, Shape};

fn main() -> vladimirov::Result<()> {
    let q2 = FieldParams::new(2, 1)?;
    for (n, d) in [(12, 1), (3, 8), (5, 1), (0, 1)] {
        let x = Point::from_ratios(&[(n, d)]);
        println!("|{x}|_2 = {:?}", q2.abs_value(&x));
    }

    let plane = FieldParams::new(2, 2)?;
    let x = Point::from_ratios(&[(1, 2), (4, 1)]);
    println!("q = {}, |{x}|_L = {:?}", plane.q(), plane.abs_value(&x));

    let ball = BallSpec::new(Point::from_ints(&[1]), 2);
    println!(
        "1 + 4Z_2 contains 5: {}, contains 3: {}",
        ball.contains(&q2, &Point::from_ints(&[5])),
        ball.contains(&q2, &Point::from_ints(&[3]))
    );
    println!("measure of |x| <= 4: {}", haar_measure(&q2, Shape::Ball, -2));
    println!("measure of |x| = 4: {}", haar_measure(&q2, Shape::Sphere, -2));

    let grid = CosetGrid::new(&q2, -1, 2)?;
    let reps: Vec<String> = grid.iter().map(|(_, c)| c.to_string()).collect();
    println!("cosets of 4Z_2 in |x| <= 2: {}", reps.join(" "));
    Ok(())
}
