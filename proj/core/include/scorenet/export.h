#pragma once

// Plain-text exporters: GraphML, DOT and CSV tables. Rows and attributes are
// written in sorted order so identical inputs give identical bytes.

#include <iosfwd>
#include <map>
#include <vector>

#include "scorenet/generate.h"
#include "scorenet/network.h"
#include "scorenet/sequence.h"

namespace scorenet {

/// Node attributes label, notes, count, in/out/total degree and (when given)
/// community; edge attribute weight.
void write_graphml(std::ostream& out, const ScoreNetwork& network,
                   const std::map<int, int>* community = nullptr);
void write_dot(std::ostream& out, const ScoreNetwork& network,
               const std::map<int, int>* community = nullptr);
void write_graphml(std::ostream& out, const GeneratedScoreNetwork& generated);

/// index,bar,id,pcset
void write_series_csv(std::ostream& out, const LabeledSeries& series);
/// id,pcset,count
void write_histogram_csv(std::ostream& out, const LabeledSeries& series);
/// id,pcset,count,in_degree,out_degree,total_degree,weighted_degree
void write_degrees_csv(std::ostream& out, const ScoreNetwork& network);
/// degree,nodes,fraction,ccdf  (total degree)
void write_degree_distribution_csv(std::ostream& out, const ScoreNetwork& network);
/// layer_a,layer_b,similarity
void write_similarity_csv(std::ostream& out, const std::vector<std::vector<double>>& matrix);

}  // namespace scorenet
