use morphseg::analyzer::batch_analyze;
use morphseg::corpus::{build_instance_base, parse_lexicon, Label, Task, Window};
use morphseg::eval::make_folds;
use morphseg::mbl::MemoryClassifier;
use morphseg::model::{Algorithm, Model};

#[test]
fn table_row_seven_is_a_boundary_under_m1() {
    let words = parse_lexicon("abnormalities\tab/1 norm/s al/1 iti/2 es/i").unwrap();
    let base = build_instance_base(&words, Task::M1, Window::default()).unwrap();
    let query: Vec<char> = "ormalit".chars().collect();
    for clf in [MemoryClassifier::ib1(base.clone()), MemoryClassifier::ib1ig(base)] {
        let c = clf.classify(&query);
        assert_eq!(c.label, Label::Neutral);
        assert_eq!(c.distance, 0.0);
    }
}

#[test]
fn global_frequency_breaks_a_split_vote() {
    // `x` starts two words and ends two, so its vector holds {1:2, 0:2};
    // the corpus as a whole has far more non-boundaries
    let words = parse_lexicon("xaaa\txaaa/s\nxbbb\txbbb/s\naaax\taaax/s\nbbbx\tbbbx/s\n").unwrap();
    let base = build_instance_base(&words, Task::M1, Window::new(0, 0)).unwrap();
    let i = base.lookup(&['x']).unwrap();
    assert_eq!(base.distribution(i).get(Label::Neutral), 2);
    assert_eq!(base.distribution(i).get(Label::Null), 2);
    assert!(base.global().get(Label::Null) > 2 * base.global().get(Label::Neutral));
    let nn = MemoryClassifier::ib1(base.clone()).nearest_set(&['x']);
    assert_eq!(nn.vectors, 1);
    for algo in Algorithm::ALL {
        assert_eq!(Model::train(base.clone(), algo).classify(&['x']), Label::Null, "{algo}");
    }
}

#[test]
fn bundled_corpus_batch_with_igtree() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/english.lex")).unwrap();
    let words = parse_lexicon(&text).unwrap();
    let plan = make_folds(words.len(), 4, 7).unwrap();
    let train: Vec<_> = plan.train_words(0).into_iter().map(|i| words[i].clone()).collect();
    let test: Vec<_> = plan.test_words(0).into_iter().take(1000).map(|i| words[i].clone()).collect();
    let model = Model::train(build_instance_base(&train, Task::M3, Window::default()).unwrap(), Algorithm::IgTree);
    let surfaces: Vec<&str> = test.iter().map(|w| w.surface()).collect();
    let out = batch_analyze(&model, &surfaces);
    assert_eq!(out.len(), 1000);
    let mut exact = 0;
    for (seg, gold) in out.iter().zip(&test) {
        let seg = seg.as_ref().unwrap();
        let joined: String = seg.segments().into_iter().map(|(t, _)| t).collect();
        assert_eq!(joined, gold.surface());
        assert_eq!(seg.labels().len(), gold.len());
        exact += usize::from(seg.to_string() == gold.to_string());
    }
    assert!(exact > 800, "{exact} of 1000 held-out words segmented exactly");
}
