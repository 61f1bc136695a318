use std::fmt::Write;

use super::{Comparison, ExperimentReport, MeanStd};

fn pm(m: &MeanStd) -> String {
    format!("{:.4} ± {:.4}", m.mean, m.std)
}

fn pm_opt(m: &Option<MeanStd>) -> String {
    m.as_ref().map_or_else(|| "-".to_string(), |m| format!("{:.2} ± {:.2}", m.mean, m.std))
}

fn chosen_cell(c: Option<usize>) -> String {
    c.map_or_else(String::new, |c| c.to_string())
}

pub fn experiment_text(report: &ExperimentReport) -> String {
    let cfg = &report.config;
    let s = &report.summary;
    let mut out = String::new();
    writeln!(
        out,
        "method {}  trials {}  base seed {}  balance {}",
        cfg.method, cfg.trials, cfg.base_seed, cfg.balance_mode
    )
    .unwrap();
    writeln!(out, "{:>5}  {:>20}  {:>6}  {:>8}  {:>8}  {:>8}", "trial", "seed", "chosen", "recall", "accuracy", "f1")
        .unwrap();
    for t in &report.trials {
        writeln!(
            out,
            "{:>5}  {:>20}  {:>6}  {:>8.4}  {:>8.4}  {:>8.4}",
            t.trial,
            t.seed,
            chosen_cell(t.chosen),
            t.test.recall,
            t.test.accuracy,
            t.test.f1
        )
        .unwrap();
    }
    writeln!(out, "recall    {}", pm(&s.recall)).unwrap();
    writeln!(out, "accuracy  {}", pm(&s.accuracy)).unwrap();
    writeln!(out, "f1        {}", pm(&s.f1)).unwrap();
    writeln!(out, "best k    {}", pm_opt(&s.chosen)).unwrap();
    out
}

pub fn experiment_csv(report: &ExperimentReport) -> String {
    let mut out = String::from("method,trial,seed,chosen,recall,accuracy,f1,tp,fn,fp,tn,train_class0,train_class1\n");
    for t in &report.trials {
        let c = &t.test.confusion;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            report.config.method,
            t.trial,
            t.seed,
            chosen_cell(t.chosen),
            t.test.recall,
            t.test.accuracy,
            t.test.f1,
            c.tp,
            c.fn_,
            c.fp,
            c.tn,
            t.train_counts[0],
            t.train_counts[1]
        )
        .unwrap();
    }
    out
}

/// Validation recall for every grid value of every trial.
pub fn traces_csv(reports: &[ExperimentReport]) -> String {
    let mut out = String::from("method,trial,seed,value,validation_recall\n");
    for r in reports {
        for t in &r.trials {
            for p in &t.trace {
                writeln!(out, "{},{},{},{},{}", r.config.method, t.trial, t.seed, p.value, p.validation_recall).unwrap();
            }
        }
    }
    out
}

/// Rows marked `*` are not significantly worse in recall than the best-mean
/// method.
pub fn comparison_text(cmp: &Comparison) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "  {:<18}{:>17}  {:>17}  {:>17}  {:>15}  {:>8}",
        "method", "recall", "accuracy", "f1", "best k", "p"
    )
    .unwrap();
    for row in &cmp.rows {
        let s = &row.summary;
        let p = if row.is_best {
            "best".to_string()
        } else if row.versus_best.inconclusive {
            "n/a".to_string()
        } else {
            format!("{:.4}", row.versus_best.p_value)
        };
        writeln!(
            out,
            "{} {:<18}{:>17}  {:>17}  {:>17}  {:>15}  {:>8}",
            if row.equivalent_to_best { '*' } else { ' ' },
            row.method.name(),
            pm(&s.recall),
            pm(&s.accuracy),
            pm(&s.f1),
            pm_opt(&s.chosen),
            p
        )
        .unwrap();
    }
    out
}

pub fn comparison_csv(cmp: &Comparison) -> String {
    let mut out = String::from(
        "method,recall_mean,recall_std,accuracy_mean,accuracy_std,f1_mean,f1_std,chosen_mean,chosen_std,\
         wilcoxon_statistic,p_value,n_effective,inconclusive,is_best,equivalent_to_best\n",
    );
    for row in &cmp.rows {
        let s = &row.summary;
        let w = &row.versus_best;
        let (cm, cs) = s.chosen.map_or((String::new(), String::new()), |c| (c.mean.to_string(), c.std.to_string()));
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            row.method,
            s.recall.mean,
            s.recall.std,
            s.accuracy.mean,
            s.accuracy.std,
            s.f1.mean,
            s.f1.std,
            cm,
            cs,
            w.statistic,
            w.p_value,
            w.n_effective,
            w.inconclusive,
            row.is_best,
            row.equivalent_to_best
        )
        .unwrap();
    }
    out
}
