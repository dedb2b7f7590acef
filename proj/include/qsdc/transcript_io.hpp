#pragma once

#include <string>
#include <vector>

#include "qsdc/bidirectional.hpp"
#include "qsdc/security.hpp"
#include "qsdc/swapping.hpp"

namespace qsdc {

// Transcripts serialize to JSON with a fixed field order and two-space
// indentation, so identical runs produce byte-identical documents.
// Carol's masks are written under "carol_masks" with "visibility": "secret".

std::string to_json(const Transcript& transcript);
std::string to_json(const SwapTranscript& transcript);
std::string to_json(const LeakageReport& report);

/// A JSON array of transcripts, one per repetition.
std::string to_json(const std::vector<Transcript>& transcripts);
std::string to_json(const std::vector<SwapTranscript>& transcripts);

}  // namespace qsdc
