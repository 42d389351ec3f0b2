//! Arithmetic in F_9 and the quadratic norm on F_9^2.

use distgraph::field::make_field;

fn main() {
    let f = make_field(3, 2).expect("F_9");
    println!("F_{} with modulus coefficients {:?} (constant term first)", f.q(), f.modulus());
    let x = f.element(5).unwrap();
    let y = f.element(7).unwrap();
    println!("x = {}, y = {}", f.format(x), f.format(y));
    println!("x + y = {}", f.format(f.add(x, y).unwrap()));
    println!("x * y = {}", f.format(f.mul(x, y).unwrap()));
    println!("1 / x = {}", f.format(f.inv(x).unwrap()));
    println!("x^9 = {} (Frobenius fixes F_9)", f.format(f.pow(x, 9).unwrap()));

    let p = f.point(vec![x, y]).unwrap();
    let o = f.point(vec![f.zero(), f.zero()]).unwrap();
    let diff = f.point_sub(&p, &o).unwrap();
    println!("||(x, y)|| = x^2 + y^2 = {}", f.format(f.norm(&diff).unwrap()));

    let squares: Vec<String> = f.enumerate().into_iter().map(|a| f.format(f.mul(a, a).unwrap())).collect();
    println!("squares: {}", squares.join(" "));
}
