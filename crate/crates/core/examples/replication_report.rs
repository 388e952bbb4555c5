//! Runs the full check suite and prints the table.

use lctcert::replication::replicate_all;

fn main() {
    let rep = replicate_all();
    print!("{}", rep.table());
    std::process::exit(if rep.all_pass() { 0 } else { 1 });
}
