//! The seven AF_3 vertex representatives as published, over Δ_{3,3}.

use crate::index::{Configuration, IndexPoint, Scale};
use crate::rational::{int, ratio, Rational};

fn build(entries: &[([u32; 3], Rational)]) -> Configuration {
    let mut c = Configuration::zeros(3, 3, Scale::Logarithmic);
    for (p, v) in entries {
        c.set(&IndexPoint::new(p.to_vec()).unwrap(), v.clone()).unwrap();
    }
    c
}

/// v1, …, v7 in order.
pub fn af3_representatives() -> Vec<Configuration> {
    let e111 = ([1, 1, 1], int(1));
    vec![
        build(&[e111.clone()]),
        build(&[([2, 1, 0], int(2)), ([1, 2, 0], int(1)), e111.clone()]),
        build(&[([2, 1, 0], int(2)), ([1, 2, 0], int(2)), e111.clone()]),
        build(&[
            ([2, 1, 0], int(2)),
            ([1, 2, 0], int(1)),
            ([2, 0, 1], ratio(1, 2)),
            ([1, 0, 2], int(1)),
            e111.clone(),
        ]),
        build(&[
            ([2, 1, 0], int(2)),
            ([1, 2, 0], int(1)),
            ([2, 0, 1], int(2)),
            ([1, 0, 2], int(1)),
            e111.clone(),
        ]),
        build(&[
            ([2, 1, 0], int(2)),
            ([1, 2, 0], int(1)),
            ([2, 0, 1], int(2)),
            ([1, 0, 2], int(1)),
            ([3, 0, 0], int(3)),
            e111.clone(),
        ]),
        build(&[
            ([2, 1, 0], ratio(2, 3)),
            ([1, 2, 0], ratio(4, 3)),
            ([2, 0, 1], ratio(4, 3)),
            ([1, 0, 2], ratio(2, 3)),
            ([0, 2, 1], ratio(2, 3)),
            ([0, 1, 2], ratio(4, 3)),
            e111,
        ]),
    ]
}
