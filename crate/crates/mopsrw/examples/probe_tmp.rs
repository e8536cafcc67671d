use mopsrw::stochastic::geometric_pair;
use mopsrw::tuple::Tuple;

fn main() {
    for s in ["4/3,5/3,2,5/2", "1/3,2/3,1/2,1", "2/3,1/3,1/2,1", "5/3,4/3,2,5/2"] {
        let t = Tuple::parse(s).unwrap();
        let (ii, i) = geometric_pair(&t, 8);
        println!("{s}");
        println!("  II: {:?}", ii.row_balance.iter().map(|b| b.to_string()).collect::<Vec<_>>());
        println!("  I : {:?}", i.row_balance.iter().map(|b| b.to_string()).collect::<Vec<_>>());
    }
}
