fn main() {
    let _ = entbound::probe();
}
