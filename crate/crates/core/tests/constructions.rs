use asymcode::bounds::{table2_report, TABLE2_REFERENCE};
use asymcode::cyclic::{table3_code, table4_parts};
use asymcode::ternary::corrects_single_zt;
use asymcode::*;

#[test]
fn builtin_cyclic_codes_correct_single_t_errors() {
    for m in 4..=8 {
        let c = table3_code(m).unwrap();
        let ch = ProductChannel::power(ChannelKind::T, 3, m).unwrap();
        assert!(
            corrects_t_errors(&c, &ch, 1, Counting::Magnitude).unwrap(),
            "m={m}"
        );
    }
    for m in 3..=7 {
        let (c0, c1) = table4_parts(m).unwrap();
        let mixed = asymcode::ternary::combine_parts(&c0, &c1).unwrap();
        assert!(corrects_single_zt(&mixed).unwrap(), "m={m}");
    }
}

#[test]
fn table2_sizes_are_reproduced() {
    let rows = table2_report(false).unwrap();
    assert_eq!(rows.len(), TABLE2_REFERENCE.len());
    for row in rows {
        assert!(!row.mismatch, "n={}", row.reference.n);
        assert_eq!(row.cyclic, row.reference.cyclic);
    }
}

#[test]
fn pairing_is_recovered_from_expansions() {
    let c = CodeBook::from_digit_strings(3, &["000", "111", "122", "212", "221"]).unwrap();
    let image = construct_even(&c).unwrap();
    let p = find_pairing(&image)
        .unwrap()
        .expect("expansion has a pairing");
    assert!(is_ternary_code(&image, &p).unwrap());
    assert_eq!(fold_to_ternary(&image, &p).unwrap().len(), c.len());

    let vt = vt_code(5, 1, 2).unwrap();
    if let Some(p) = find_pairing(&vt).unwrap() {
        assert!(is_ternary_code(&vt, &p).unwrap());
    }
}

#[test]
fn vt_and_cr_codes_fold() {
    for n in [4usize, 6, 8, 10, 12] {
        let g = best_cr_group(n).unwrap();
        let p = canonical_pairing(&g, PairingMode::Inverse).unwrap();
        let c = cr_code(&g, &g.identity(), 2).unwrap();
        assert!(is_ternary_code(&c, &p).unwrap(), "n={n}");
        assert!(is_t_code(&c, 1));
        let folded = fold_to_ternary(&c, &p).unwrap();
        let ch = ProductChannel::power(ChannelKind::T, 3, n / 2).unwrap();
        assert!(corrects_t_errors(&folded, &ch, 1, Counting::Magnitude).unwrap());
    }
}

#[test]
fn concatenated_decoder_round_trips() {
    let h = hamming_parity_check(3, 2).unwrap();
    for shorten in [false, true] {
        let code = concat_code(&h, shorten).unwrap();
        let words = code.codewords().unwrap();
        for x in words.iter().step_by(7) {
            for i in 0..x.len() {
                if x[i] == 0 {
                    continue;
                }
                let mut y = x.to_vec();
                y[i] -= 1;
                let got = decode_concat(&h, &Word::uniform(3, y).unwrap()).unwrap();
                assert_eq!(got.symbols(), x);
            }
        }
    }
}

#[test]
fn nonprime_alphabets_are_rejected() {
    assert!(hamming_parity_check(4, 2).is_err());
    assert!(MatrixModZq::from_digit_rows(6, &["12"], MatrixRole::Generator).is_err());
}
