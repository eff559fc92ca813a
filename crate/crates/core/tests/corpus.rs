use ringlab::verify::{default_corpus, failure_count, run_corpus, Verdict};
use ringlab::Limits;

#[test]
fn default_corpus_has_no_failures() {
    let corpus = default_corpus();
    assert!(corpus.len() >= 12);
    let results = run_corpus(&corpus, 1..=4, Limits::default());
    for r in results.iter().filter(|r| r.verdict.is_failure()) {
        eprintln!("{r:?}");
    }
    assert_eq!(failure_count(&results), 0);
    let skipped: Vec<_> = results.iter().filter(|r| r.verdict == Verdict::Skipped).collect();
    assert!(skipped.is_empty(), "{skipped:?}");
}
