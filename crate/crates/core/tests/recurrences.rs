use degree_trees::{count_allowed_seq, extend_with_recurrence, guess_recurrence, BigInt, DegreeSet, GuessOptions};

fn terms(p: &str, max_n: usize) -> Vec<BigInt> {
    let p: DegreeSet = p.parse().unwrap();
    count_allowed_seq(&p, max_n).unwrap().into_iter().map(BigInt::from).collect()
}

#[test]
fn guessed_recurrences_extend_exactly() {
    for p in ["1,2,3", "1,3,4"] {
        let prefix = terms(p, 110);
        let rec = guess_recurrence(&prefix, 2, GuessOptions::new(4, 8).verify(50)).unwrap().expect(p);
        assert!(rec.terms_verified >= 50);
        let direct = terms(p, 200);
        let extended = extend_with_recurrence(&rec, &prefix[..30], direct.len()).unwrap();
        for n in [100, 150, 200] {
            assert_eq!(extended[n - 2], direct[n - 2], "P = {p}, n = {n}");
        }
    }
}

#[test]
fn odd_support_recurrence() {
    let prefix = terms("1,3", 160);
    let rec = guess_recurrence(&prefix, 2, GuessOptions::new(2, 4).verify(20)).unwrap().unwrap();
    assert_eq!(rec.reindex.map(|r| r.stride), Some(2));
    let direct = terms("1,3", 240);
    assert_eq!(extend_with_recurrence(&rec, &prefix, direct.len()).unwrap(), direct);
}
