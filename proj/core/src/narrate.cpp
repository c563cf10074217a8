#include "tmc/narrate.hpp"

#include "tmc/errors.hpp"

#include <algorithm>

namespace tmc {

namespace {

std::string with_terminal_period(const std::string& text) {
    if (!text.empty() && text.back() == '.') return text;
    return text + ".";
}

std::string narrate_expr(const Document& doc, const BehaviorPtr& expr) {
    switch (expr->kind) {
        case BehaviorExpr::Kind::EventRef: {
            const Event* event = doc.find_event(expr->event_id);
            if (!event) throw UnknownEventError(expr->event_id);
            return with_terminal_period(event->description) + " (" + event->id + ")";
        }
        case BehaviorExpr::Kind::Seq: {
            std::string out;
            for (std::size_t i = 0; i < expr->children.size(); ++i) {
                if (i) out += " ";
                out += narrate_expr(doc, expr->children[i]);
            }
            return out;
        }
        case BehaviorExpr::Kind::Alt: {
            std::string out = "Either: " + narrate_expr(doc, expr->children.front());
            for (std::size_t i = 1; i < expr->children.size(); ++i) {
                out += " Or: " + narrate_expr(doc, expr->children[i]);
            }
            return out;
        }
        case BehaviorExpr::Kind::Loop: {
            std::string body = narrate_expr(doc, expr->children.front());
            if (expr->guard) return body + " Repeating this " + *expr->guard + ".";
            return body + " This repeats.";
        }
        case BehaviorExpr::Kind::Par: {
            std::string out = "In parallel: " + narrate_expr(doc, expr->children.front());
            for (std::size_t i = 1; i < expr->children.size(); ++i) {
                out += " And: " + narrate_expr(doc, expr->children[i]);
            }
            return out;
        }
    }
    return {};
}

}  // namespace

std::string narrate_chronology(const Document& doc) {
    if (!doc.chronology) throw NoChronologyError();
    return narrate_expr(doc, doc.chronology->root);
}

std::string CoverageReport::percent_text() const {
    return std::to_string(percent_tenths / 10) + "." + std::to_string(percent_tenths % 10);
}

CoverageReport coverage_report(const std::string& source_text,
                               const std::vector<Annotation>& annotations) {
    CoverageReport report;
    report.total_bytes = source_text.size();

    std::vector<AnnotationSpan> spans;
    for (const auto& ann : annotations) {
        for (const auto& span : ann.spans) {
            AnnotationSpan s = span;
            if (s.start > source_text.size() || s.end > source_text.size()) {
                report.warnings.push_back(
                    {Severity::Warning, "SPAN001",
                     "annotation span " + std::to_string(s.start) + ".." +
                         std::to_string(s.end) + " for " + ann.event_id +
                         " exceeds the source text (" +
                         std::to_string(source_text.size()) + " bytes); clipped",
                     ann.span});
                s.start = std::min(s.start, source_text.size());
                s.end = std::min(s.end, source_text.size());
            }
            if (s.start < s.end) spans.push_back(s);
        }
    }

    std::sort(spans.begin(), spans.end(), [](const AnnotationSpan& a, const AnnotationSpan& b) {
        return a.start != b.start ? a.start < b.start : a.end < b.end;
    });

    // Merge overlapping and adjacent spans so each byte counts once.
    std::vector<AnnotationSpan> merged;
    for (const auto& s : spans) {
        if (!merged.empty() && s.start <= merged.back().end) {
            merged.back().end = std::max(merged.back().end, s.end);
        } else {
            merged.push_back(s);
        }
    }

    for (const auto& s : merged) report.covered_bytes += s.end - s.start;

    if (report.total_bytes > 0) {
        // covered/total * 1000, rounded half-up, all in integers.
        unsigned long long num = static_cast<unsigned long long>(report.covered_bytes) * 1000ULL;
        unsigned long long den = report.total_bytes;
        report.percent_tenths = static_cast<int>((2 * num + den) / (2 * den));
    }

    std::string marked;
    marked.reserve(source_text.size() + merged.size() * 4);
    std::size_t pos = 0;
    for (const auto& s : merged) {
        marked.append(source_text, pos, s.start - pos);
        marked += "<<";
        marked.append(source_text, s.start, s.end - s.start);
        marked += ">>";
        pos = s.end;
    }
    marked.append(source_text, pos, source_text.size() - pos);
    report.marked_text = std::move(marked);
    return report;
}

std::string format_coverage(const CoverageReport& report) {
    std::string out = "coverage: " + report.percent_text() + "%\n";
    out += "covered: " + std::to_string(report.covered_bytes) + "/" +
           std::to_string(report.total_bytes) + " bytes\n\n";
    out += report.marked_text;
    return out;
}

}  // namespace tmc
