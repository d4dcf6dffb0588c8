use proptest::prelude::*;

use morphseg::base::{InstanceBase, InstanceBaseBuilder, Schema};
use morphseg::corpus::{
    build_instance_base, parse_lexicon, project_labels, split_at_boundaries, window_word, AnnotatedWord, Label,
    MorphTag, Task, Window,
};
use morphseg::igtree::IgTree;
use morphseg::info::{entropy, feature_order, information_gain, FeatureWeights, OrderMode};
use morphseg::mbl::{distance, MemoryClassifier, Weighting};

fn tag() -> impl Strategy<Value = char> {
    prop::sample::select(vec!['s', '1', '2', 'i'])
}

fn word() -> impl Strategy<Value = AnnotatedWord> {
    prop::collection::vec(("[a-e]{1,4}", tag()), 1..5).prop_map(|segs| {
        let surface: String = segs.iter().map(|(t, _)| t.as_str()).collect();
        let line = segs.iter().map(|(t, g)| format!("{t}/{g}")).collect::<Vec<_>>().join(" ");
        parse_lexicon(&format!("{surface}\t{line}")).unwrap().remove(0)
    })
}

fn rows(width: usize) -> impl Strategy<Value = Vec<(Vec<char>, u8, u64)>> {
    prop::collection::vec((prop::collection::vec(prop::sample::select(vec!['a', 'b', 'c', 'd']), width), 0u8..3, 1u64..4), 1..40)
}

fn label(i: u8) -> Label {
    [Label::Null, Label::Neutral, Label::Inflectional][i as usize]
}

fn base_of(rows: &[(Vec<char>, u8, u64)], window: Window, times: u64) -> InstanceBase {
    let mut b = InstanceBaseBuilder::new(Schema { task: Task::M3, window });
    for (v, l, c) in rows {
        b.add(v, label(*l), c * times);
    }
    b.build()
}

fn gains(base: &InstanceBase) -> Vec<f64> {
    (0..base.width()).map(|f| information_gain(base, f)).collect()
}

proptest! {
    #[test]
    fn segmentation_round_trips(w in word()) {
        let symbols = w.symbols();
        let split = split_at_boundaries(&symbols, &project_labels(&w, Task::M3));
        prop_assert_eq!(split.len(), w.segments().len());
        for ((text, l), seg) in split.iter().zip(w.segments()) {
            prop_assert_eq!(text, &seg.text);
            prop_assert_eq!(l.as_char(), seg.tag.as_char());
        }
        let reparsed = parse_lexicon(&w.to_string()).unwrap().remove(0);
        prop_assert_eq!(reparsed, w);
    }

    #[test]
    fn one_instance_per_letter(w in word(), left in 0usize..5, right in 0usize..5) {
        for task in Task::ALL {
            let inst = window_word(&w, task, Window::new(left, right));
            prop_assert_eq!(inst.len(), w.len());
            for i in &inst {
                prop_assert_eq!(i.features.len(), left + right + 1);
            }
        }
    }

    #[test]
    fn null_positions_agree_across_tasks(w in word()) {
        let m1 = project_labels(&w, Task::M1);
        let m2 = project_labels(&w, Task::M2);
        let m3 = project_labels(&w, Task::M3);
        for i in 0..w.len() {
            let nulls = [m1[i], m2[i], m3[i]].map(|l| l == Label::Null);
            prop_assert!(nulls[0] == nulls[1] && nulls[1] == nulls[2]);
        }
        prop_assert!(m1[0].is_boundary());
    }

    #[test]
    fn gain_ignores_order_and_duplication(rs in rows(3), seed in any::<u64>(), k in 2u64..5) {
        let window = Window::new(1, 1);
        let base = base_of(&rs, window, 1);
        let mut shuffled = rs.clone();
        let n = shuffled.len();
        for i in (1..n).rev() {
            shuffled.swap(i, (seed.wrapping_mul(i as u64 + 7) % (i as u64 + 1)) as usize);
        }
        let g = gains(&base);
        prop_assert_eq!(&g, &gains(&base_of(&shuffled, window, 1)));
        prop_assert_eq!(&g, &gains(&base_of(&rs, window, k)));
        let h = entropy(base.global()).unwrap();
        for x in g {
            prop_assert!((0.0..=h).contains(&x));
        }
    }

    #[test]
    fn class_copy_feature_has_full_gain(rs in rows(2)) {
        // the middle feature spells out the label
        let rows: Vec<_> = rs
            .iter()
            .map(|(v, l, c)| (vec![v[0], (b'p' + l) as char, v[1]], *l, *c))
            .collect();
        let base = base_of(&rows, Window::new(1, 1), 1);
        let h = entropy(base.global()).unwrap();
        prop_assert!((information_gain(&base, 1) - h).abs() < 1e-12);
    }

    #[test]
    fn distance_is_symmetric(
        x in prop::collection::vec(0u8..4, 7),
        y in prop::collection::vec(0u8..4, 7),
        w in prop::collection::vec(0.0f64..3.0, 7),
    ) {
        let w = FeatureWeights::new(w);
        prop_assert_eq!(distance(&x, &x, &w).unwrap(), 0.0);
        prop_assert_eq!(distance(&x, &y, &w).unwrap(), distance(&y, &x, &w).unwrap());
    }

    #[test]
    fn equal_gains_give_ib1_argmin(rs in rows(3), q in prop::collection::vec(prop::sample::select(vec!['a', 'b', 'c', 'd', 'e']), 3)) {
        // closing the rows under rotation makes every feature equally informative
        let mut closed = Vec::new();
        for (v, l, c) in &rs {
            for r in 0..3 {
                closed.push((vec![v[r], v[(r + 1) % 3], v[(r + 2) % 3]], *l, *c));
            }
        }
        let base = base_of(&closed, Window::new(1, 1), 1);
        let g = gains(&base);
        prop_assert!(g.iter().all(|&x| x == g[0]));
        prop_assume!(g[0] > 0.0);
        let ib1 = MemoryClassifier::ib1(base.clone()).nearest_set(&q);
        let ig = MemoryClassifier::ib1ig(base).nearest_set(&q);
        prop_assert_eq!(ib1.vectors, ig.vectors);
        prop_assert_eq!(&ib1.distribution, &ig.distribution);
        prop_assert!((ig.distance - ib1.distance * g[0]).abs() < 1e-12);
    }

    #[test]
    fn scaled_weights_classify_the_same(rs in rows(3), c in 0.01f64..100.0, q in prop::collection::vec(prop::sample::select(vec!['a', 'b', 'c', 'x']), 3)) {
        let base = base_of(&rs, Window::new(1, 1), 1);
        let w = FeatureWeights::gain(&base);
        let scaled = FeatureWeights::new(w.as_slice().iter().map(|x| x * c).collect());
        let a = MemoryClassifier::with_weights(base.clone(), w, Weighting::Gain).classify(&q);
        let b = MemoryClassifier::with_weights(base, scaled, Weighting::Gain).classify(&q);
        prop_assert_eq!(a.label, b.label);
        prop_assert_eq!(a.distribution, b.distribution);
    }

    #[test]
    fn igtree_builds_are_deterministic(rs in rows(3), q in prop::collection::vec(prop::sample::select(vec!['a', 'b', 'c', 'd', 'x']), 3)) {
        let base = base_of(&rs, Window::new(1, 1), 1);
        let order = feature_order(&base, OrderMode::Gain);
        let a = IgTree::build(&base, &order).unwrap();
        let b = IgTree::build(&base, &order).unwrap();
        prop_assert_eq!(a.classify(&q), b.classify(&q));
        let (mut sa, mut sb) = (String::new(), String::new());
        a.write_nodes(&mut sa);
        b.write_nodes(&mut sb);
        prop_assert_eq!(sa, sb);
    }

    #[test]
    fn instance_totals_match_letters(ws in prop::collection::vec(word(), 1..8)) {
        let letters: usize = ws.iter().map(AnnotatedWord::len).sum();
        for task in Task::ALL {
            let base = build_instance_base(&ws, task, Window::default()).unwrap();
            prop_assert_eq!(base.global().total(), letters as u64);
            prop_assert!(base.len() <= letters);
        }
    }
}

#[test]
fn tags_project_as_documented() {
    let cases = [
        (MorphTag::Stem, "1", "d", "s"),
        (MorphTag::Neutral, "1", "d", "1"),
        (MorphTag::Affecting, "1", "d", "2"),
        (MorphTag::Inflection, "1", "i", "i"),
    ];
    for (tag, m1, m2, m3) in cases {
        assert_eq!(Task::M1.project(tag).to_string(), m1);
        assert_eq!(Task::M2.project(tag).to_string(), m2);
        assert_eq!(Task::M3.project(tag).to_string(), m3);
    }
}
