#include "spanbridge/projection.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>

#include "spanbridge/error.hpp"

namespace spanbridge {

using nlohmann::json;

std::string_view to_string(OutcomeStatus status) noexcept {
  switch (status) {
    case OutcomeStatus::Projected:
      return "projected";
    case OutcomeStatus::Filtered:
      return "filtered";
    case OutcomeStatus::Failed:
      return "failed";
  }
  return "unknown";
}

ProjectionOutcome ProjectionOutcome::projected(AnnotatedSentence sentence) {
  ProjectionOutcome out;
  out.status = OutcomeStatus::Projected;
  out.sentence = std::move(sentence);
  return out;
}

ProjectionOutcome ProjectionOutcome::filtered(std::string_view reason, std::string diagnostic) {
  ProjectionOutcome out;
  out.status = OutcomeStatus::Filtered;
  out.reason = reason;
  if (!diagnostic.empty()) out.diagnostics.push_back(std::move(diagnostic));
  return out;
}

ProjectionOutcome ProjectionOutcome::failed(std::string_view reason, std::string diagnostic) {
  ProjectionOutcome out = filtered(reason, std::move(diagnostic));
  out.status = OutcomeStatus::Failed;
  return out;
}

void ProjectionReport::add(OutcomeStatus status, const std::string& reason, bool low_conf) {
  ++total;
  switch (status) {
    case OutcomeStatus::Projected:
      ++projected;
      break;
    case OutcomeStatus::Filtered:
      ++filtered;
      break;
    case OutcomeStatus::Failed:
      ++failed;
      break;
  }
  if (low_conf) ++low_confidence;
  if (!reason.empty()) ++reasons[reason];
}

std::string report_to_json(const ProjectionReport& report) {
  json doc = {{"total", report.total},
              {"projected", report.projected},
              {"filtered", report.filtered},
              {"failed", report.failed},
              {"low_confidence", report.low_confidence},
              {"reasons", json::object()}};
  for (const auto& [reason, count] : report.reasons) doc["reasons"][reason] = count;
  if (report.total > 0) {
    doc["projection_rate"] =
        static_cast<double>(report.projected) / static_cast<double>(report.total);
  }
  return doc.dump(2);
}

ProjectionReport report_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    ProjectionReport report;
    report.total = doc.at("total").get<std::size_t>();
    report.projected = doc.at("projected").get<std::size_t>();
    report.filtered = doc.at("filtered").get<std::size_t>();
    report.failed = doc.at("failed").get<std::size_t>();
    report.low_confidence = doc.value("low_confidence", std::size_t{0});
    if (const auto it = doc.find("reasons"); it != doc.end()) {
      for (const auto& [reason, count] : it->items()) report.reasons[reason] = count.get<std::size_t>();
    }
    if (report.total != report.projected + report.filtered + report.failed) {
      throw ValidationError("report counts do not add up to total");
    }
    return report;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

AnnotatedSentence build_target_sentence(const AnnotatedSentence& source, std::string text,
                                        std::vector<LabeledSpan> target_spans,
                                        const std::vector<std::size_t>& source_ids) {
  if (source_ids.size() != target_spans.size()) {
    throw ContractError("source id map does not match target spans");
  }
  std::vector<std::size_t> order(target_spans.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return target_spans[a].start < target_spans[b].start;
  });

  constexpr std::size_t kUnmapped = static_cast<std::size_t>(-1);
  std::vector<std::size_t> target_of_source(source.spans().size(), kUnmapped);
  std::vector<LabeledSpan> spans;
  spans.reserve(order.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    LabeledSpan span = std::move(target_spans[order[rank]]);
    span.id = rank;
    if (source_ids[order[rank]] < target_of_source.size()) {
      target_of_source[source_ids[order[rank]]] = rank;
    }
    spans.push_back(std::move(span));
  }

  std::vector<RelationLink> relations;
  for (const RelationLink& link : source.relations()) {
    const std::size_t head = target_of_source[link.head_span_id];
    const std::size_t tail = target_of_source[link.tail_span_id];
    if (head != kUnmapped && tail != kUnmapped) relations.push_back({link.kind, head, tail});
  }
  return AnnotatedSentence(std::move(text), std::move(spans), source.meta(), std::move(relations));
}

}  // namespace spanbridge
