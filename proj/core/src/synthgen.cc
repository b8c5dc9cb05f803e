// Copyright 2026 The dhg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "dhg/synthgen.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include "dhg/error.h"
#include <nlohmann/json.hpp>

namespace dhg {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr Timestamp kPayoutDelay = 7 * kSecondsPerDay;
constexpr std::int64_t kFirstBlock = 35000000;
constexpr double kMaxFollows = 5.0e7;

constexpr std::string_view kTags[] = {
    "steemit", "life",    "photography", "art",     "travel",   "food",    "health",
    "crypto",  "music",   "nature",      "blog",    "news",     "sports",  "science",
    "gaming",  "writing", "bitcoin",     "funny",   "technology", "history", "actifit",
};

constexpr std::string_view kVocabulary[] = {
    "the",    "a",       "today",   "my",     "new",     "great",   "day",     "world",   "people", "time",
    "first",  "good",    "post",    "thanks", "friends", "best",    "story",   "week",    "love",   "work",
    "photo",  "walk",    "market",  "token",  "vote",    "reward",  "contest", "update",  "daily",  "city",
    "garden", "flower",  "insect",  "coffee", "bridge",  "river",   "mountain", "winter", "summer", "project",
    "team",   "support", "share",   "read",   "write",   "think",   "simple",  "little",  "big",    "light",
    "dark",   "color",   "song",    "game",   "win",     "giveaway", "random", "question", "answer", "idea",
};

[[noreturn]] void invalid(const std::string& detail) { throw Error(ErrorCode::kInvalidConfig, detail); }

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  Timestamp between(Timestamp lo, Timestamp hi) { return std::uniform_int_distribution<Timestamp>(lo, hi)(rng_); }

  std::size_t count(const CountDistribution& d) {
    if (d.mean <= 0.0) return 0;
    double rate = d.mean;
    if (d.dispersion > 0.0) rate *= std::exp(d.dispersion * normal() - 0.5 * d.dispersion * d.dispersion);
    rate = std::min(rate, 1.0e7);
    return static_cast<std::size_t>(std::poisson_distribution<long long>(rate)(rng_));
  }

  /// At least one second, exponential tail.
  Timestamp delay(double mean_days) {
    const double mean_s = std::max(mean_days, 1.0e-6) * static_cast<double>(kSecondsPerDay);
    return 1 + static_cast<Timestamp>(std::floor(std::exponential_distribution<double>(1.0 / mean_s)(rng_)));
  }

  /// k distinct indices from [0, n), in draw order.
  std::vector<std::size_t> distinct(std::size_t k, std::size_t n) {
    std::vector<std::size_t> out;
    k = std::min(k, n);
    out.reserve(k);
    if (k * 2 > n) {
      std::vector<std::size_t> all(n);
      std::iota(all.begin(), all.end(), 0);
      for (std::size_t i = 0; i < k; ++i) {
        std::swap(all[i], all[i + index(n - i)]);
        out.push_back(all[i]);
      }
      return out;
    }
    std::unordered_set<std::size_t> seen;
    while (out.size() < k) {
      std::size_t v = index(n);
      if (seen.insert(v).second) out.push_back(v);
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

struct RewardTotals {
  std::int64_t net = 0;
  std::int64_t abs = 0;
  std::int64_t positive = 0;
};

struct Builder {
  const GenConfig& cfg;
  Sampler& s;
  std::vector<std::string> names;
  std::vector<double> power;
  std::vector<double> reputation;
  std::vector<UserTally> users;
  std::vector<char> mentioned;
  std::vector<std::pair<std::size_t, OpRecord>> staged;  // (generation seq, op)
  GroundTruth truth;

  void mention(std::size_t u) { mentioned[u] = 1; }

  void emit(OpRecord op) {
    op.block_no = kFirstBlock + (op.timestamp - cfg.time_range.t1()) / 3;
    staged.emplace_back(staged.size(), std::move(op));
  }

  std::string text(std::size_t words, const std::string& category) {
    std::string out;
    for (std::size_t i = 0; i < words; ++i) {
      if (i) out += ' ';
      if (s.uniform() < 0.1) {
        out += category;
      } else {
        out += kVocabulary[s.index(std::size(kVocabulary))];
      }
    }
    return out;
  }

  /// Emits distinct-voter votes on (author, permlink) created at `created`.
  std::size_t votes(const CountDistribution& dist, std::size_t author, const std::string& permlink,
                    Timestamp created, RewardTotals& totals) {
    const std::size_t n = std::min(s.count(dist), names.size());
    for (std::size_t voter : s.distinct(n, names.size())) {
      const Timestamp t = std::min(cfg.time_range.t2(), created + s.delay(cfg.activity_mean_days));
      std::int64_t weight = 0;
      if (s.uniform() < cfg.downvote_prob) {
        weight = -static_cast<std::int64_t>(s.index(10) + 1) * 1000;
      } else {
        weight = static_cast<std::int64_t>(s.index(100) + 1) * 100;
      }
      const auto rshares = static_cast<std::int64_t>(std::llround(static_cast<double>(weight) * power[voter]));
      totals.net += rshares;
      totals.abs += std::llabs(rshares);
      if (rshares > 0) totals.positive += rshares;

      emit(OpRecord{t, 0, VoteOp{names[voter], names[author], permlink, weight}});
      mention(voter);
      ++users[voter].votes_cast;
    }
    truth.edges[index_of(EdgeKind::kVote)] += n;
    return n;
  }
};

double round_decimals(double v, double scale) { return std::round(v * scale) / scale; }

std::string padded(std::string_view prefix, std::size_t i, int width) {
  std::string digits = std::to_string(i);
  if (static_cast<int>(digits.size()) < width) digits.insert(0, width - digits.size(), '0');
  return std::string(prefix) + digits;
}

}  // namespace

std::string category_name(std::size_t index) {
  if (index < std::size(kTags)) return std::string(kTags[index]);
  return "tag-" + std::to_string(index);
}

void GenConfig::validate() const {
  auto prob = [](double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) invalid(std::string(what) + " must lie in [0,1]");
  };
  auto dist = [](const CountDistribution& d, const char* what) {
    if (!(d.mean >= 0.0) || !(d.dispersion >= 0.0) || !std::isfinite(d.mean) || !std::isfinite(d.dispersion)) {
      invalid(std::string(what) + " needs finite mean >= 0 and dispersion >= 0");
    }
  };
  dist(comments_per_post, "comments_per_post");
  dist(votes_per_post, "votes_per_post");
  dist(votes_per_comment, "votes_per_comment");
  dist(body_words, "body_words");
  prob(reply_to_comment_prob, "reply_to_comment_prob");
  prob(follow_density, "follow_density");
  prob(payout.zero_inflation, "payout.zero_inflation");
  prob(payout.zero_engagement_coupling, "payout.zero_engagement_coupling");
  prob(downvote_prob, "downvote_prob");
  if (!(payout.log_sigma >= 0.0) || !std::isfinite(payout.log_mean) || !std::isfinite(payout.engagement_beta)) {
    invalid("payout parameters must be finite with log_sigma >= 0");
  }
  if (!(category_zipf >= 0.0)) invalid("category_zipf must be >= 0");
  if (!(activity_mean_days > 0.0)) invalid("activity_mean_days must be > 0");
  if (n_posts > 0) {
    if (n_users == 0) invalid("posts need at least one user");
    if (n_categories == 0) invalid("posts need at least one category");
    if (time_range.t2() - time_range.t1() < kPayoutDelay) {
      invalid("time_range must span at least 7 days so every post reaches its payout");
    }
  }
  const double pairs = static_cast<double>(n_users) * (static_cast<double>(n_users) - 1.0);
  if (follow_density * pairs > kMaxFollows) invalid("follow_density yields more than 5e7 follow edges");
}

GenConfig full_scale_config(std::uint64_t seed) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.n_users = 60000;
  cfg.n_posts = 24000;
  cfg.comments_per_post = {3.0, 0.8};
  cfg.votes_per_post = {40.0, 1.0};
  cfg.votes_per_comment = {1.0, 0.8};
  cfg.follow_density = 5.0e-5;
  return cfg;
}

Generated generate(const GenConfig& cfg) {
  cfg.validate();
  Sampler s(cfg.seed);
  Builder b{cfg, s, {}, {}, {}, {}, {}, {}, {}};

  const std::size_t n_users = cfg.n_users;
  b.names.reserve(n_users);
  b.users.resize(n_users);
  b.mentioned.assign(n_users, 0);
  for (std::size_t u = 0; u < n_users; ++u) {
    b.names.push_back(padded("user-", u, 5));
    b.users[u].name = b.names.back();
    b.power.push_back(std::exp(0.8 * s.normal()) * 1.0e5);
    b.reputation.push_back(round_decimals(25.0 + 50.0 * s.uniform(), 100.0));
  }

  std::vector<double> zipf_weights;
  for (std::size_t k = 0; k < cfg.n_categories; ++k) {
    zipf_weights.push_back(1.0 / std::pow(static_cast<double>(k + 1), cfg.category_zipf));
  }
  std::discrete_distribution<std::size_t> pick_category(zipf_weights.begin(), zipf_weights.end());

  struct PostState {
    std::string permlink;
    std::size_t author;
    Timestamp created;
    RewardTotals rewards;
    double engagement;
  };
  std::vector<PostState> posts;
  posts.reserve(cfg.n_posts);

  const Timestamp t1 = cfg.time_range.t1();
  const Timestamp t2 = cfg.time_range.t2();
  for (std::size_t i = 0; i < cfg.n_posts; ++i) {
    PostState post{padded("post-", i, 6), s.index(n_users), s.between(t1, t2 - kPayoutDelay), {}, 0.0};
    const std::string category = category_name(pick_category(s.rng()));
    CommentOp op;
    op.author = b.names[post.author];
    op.permlink = post.permlink;
    op.category = category;
    op.title = "Post " + std::to_string(i) + " on " + category + ": " + b.text(4, category);
    op.body = b.text(std::max<std::size_t>(1, s.count(cfg.body_words)), category);
    op.features.emplace("author_reputation", b.reputation[post.author]);
    b.emit(OpRecord{post.created, 0, std::move(op)});
    b.mention(post.author);
    ++b.users[post.author].authored;

    struct ThreadNode {
      std::string permlink;
      std::size_t author;
      Timestamp created;
    };
    std::vector<ThreadNode> thread;
    std::size_t direct = 0;
    const std::size_t planned = s.count(cfg.comments_per_post);
    for (std::size_t j = 0; j < planned; ++j) {
      const bool nested = !thread.empty() && s.uniform() < cfg.reply_to_comment_prob;
      const ThreadNode parent = nested ? thread[s.index(thread.size())]
                                       : ThreadNode{post.permlink, post.author, post.created};
      const Timestamp created = parent.created + s.delay(cfg.activity_mean_days);
      if (created > t2) continue;
      ThreadNode node{"re-" + post.permlink + "-" + std::to_string(j), s.index(n_users), created};

      // The comment's own votes come first so its reward features are known at creation.
      const std::size_t op_index = b.staged.size();
      b.emit(OpRecord{created, 0, CommentOp{}});
      RewardTotals rewards;
      b.votes(cfg.votes_per_comment, node.author, node.permlink, created, rewards);

      CommentOp c;
      c.parent_author = b.names[parent.author];
      c.parent_permlink = parent.permlink;
      c.author = b.names[node.author];
      c.permlink = node.permlink;
      c.body = b.text(std::max<std::size_t>(1, s.count(cfg.body_words) / 4), category);
      c.features = {{"net_rshares", rewards.net},
                    {"abs_rshares", rewards.abs},
                    {"vote_rshares", rewards.positive},
                    {"author_rewards", std::int64_t{0}},
                    {"author_reputation", b.reputation[node.author]}};
      b.staged[op_index].second.payload = std::move(c);
      b.mention(node.author);
      ++b.users[node.author].authored;
      if (!nested) ++direct;
      thread.push_back(std::move(node));
    }
    b.truth.nodes[index_of(NodeKind::kComment)] += thread.size();

    const std::size_t n_votes =
        b.votes(cfg.votes_per_post, post.author, post.permlink, post.created, post.rewards);
    post.engagement = std::log1p(static_cast<double>(n_votes)) + std::log1p(static_cast<double>(thread.size()));
    b.truth.posts.push_back(PostTally{post.permlink, n_votes, direct, thread.size(), 0.0});
    posts.push_back(std::move(post));
  }

  // Payouts: zero-inflated, engagement-coupled, log-normal positive part.
  if (!posts.empty()) {
    const std::size_t n = posts.size();
    double mean_engagement = 0.0;
    for (const auto& p : posts) mean_engagement += p.engagement;
    mean_engagement /= static_cast<double>(n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t c) { return posts[a].engagement < posts[c].engagement; });
    std::vector<double> rank(n);
    for (std::size_t r = 0; r < n; ++r) rank[order[r]] = (static_cast<double>(r) + 0.5) / static_cast<double>(n);

    const PayoutModel& pm = cfg.payout;
    const double margin = std::min(pm.zero_inflation, 1.0 - pm.zero_inflation) * pm.zero_engagement_coupling;
    for (std::size_t i = 0; i < n; ++i) {
      PostState& p = posts[i];
      const double p_zero = pm.zero_inflation + margin * (1.0 - 2.0 * rank[i]);
      const double u = s.uniform();
      const double z = s.normal();
      const double reward_noise = std::exp(0.5 * s.normal());
      double payout = 0.0;
      if (u >= p_zero) {
        payout = std::exp(pm.log_mean + pm.engagement_beta * (p.engagement - mean_engagement) + pm.log_sigma * z);
        payout = std::max(0.001, round_decimals(payout, 1000.0));
      } else {
        ++b.truth.zero_payouts;
      }
      b.truth.posts[i].payout = payout;

      CommentOp edit;
      edit.author = b.names[p.author];
      edit.permlink = p.permlink;
      edit.features = {{"payout", payout},
                       {"net_rshares", p.rewards.net},
                       {"abs_rshares", p.rewards.abs},
                       {"vote_rshares", p.rewards.positive},
                       {"author_rewards", static_cast<std::int64_t>(std::llround(payout * 500.0 * reward_noise))},
                       {"author_reputation", b.reputation[p.author]}};
      b.emit(OpRecord{p.created + kPayoutDelay, 0, std::move(edit)});
    }
  }

  // Follows: distinct ordered pairs, uniform times.
  const double pairs = static_cast<double>(n_users) * (static_cast<double>(n_users) - 1.0);
  const auto n_follows = static_cast<std::size_t>(std::llround(cfg.follow_density * pairs));
  if (n_follows > 0) {
    std::vector<std::uint64_t> chosen;
    if (static_cast<double>(n_follows) * 2.0 > pairs) {
      std::vector<std::uint64_t> all;
      for (std::size_t a = 0; a < n_users; ++a) {
        for (std::size_t c = 0; c < n_users; ++c) {
          if (a != c) all.push_back(static_cast<std::uint64_t>(a) * n_users + c);
        }
      }
      for (std::size_t i = 0; i < n_follows; ++i) std::swap(all[i], all[i + s.index(all.size() - i)]);
      chosen.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n_follows));
    } else {
      std::unordered_set<std::uint64_t> seen;
      while (chosen.size() < n_follows) {
        const std::size_t a = s.index(n_users);
        const std::size_t c = s.index(n_users);
        if (a == c) continue;
        const std::uint64_t key = static_cast<std::uint64_t>(a) * n_users + c;
        if (seen.insert(key).second) chosen.push_back(key);
      }
    }
    for (std::uint64_t key : chosen) {
      const std::size_t a = key / n_users;
      const std::size_t c = key % n_users;
      b.emit(OpRecord{s.between(t1, t2), 0, FollowOp{b.names[a], b.names[c]}});
      b.mention(a);
      b.mention(c);
      ++b.users[a].follows;
    }
    b.truth.edges[index_of(EdgeKind::kFollow)] = n_follows;
  }

  GroundTruth& truth = b.truth;
  truth.nodes[index_of(NodeKind::kPost)] = posts.size();
  truth.edges[index_of(EdgeKind::kAuthored)] = posts.size() + truth.nodes[index_of(NodeKind::kComment)];
  truth.edges[index_of(EdgeKind::kReply)] = truth.nodes[index_of(NodeKind::kComment)];
  truth.edits = posts.size();
  for (std::size_t u = 0; u < n_users; ++u) {
    if (b.mentioned[u]) truth.users.push_back(b.users[u]);
  }
  truth.nodes[index_of(NodeKind::kUser)] = truth.users.size();
  truth.ops = b.staged.size();

  std::stable_sort(b.staged.begin(), b.staged.end(), [](const auto& x, const auto& y) {
    return std::tie(x.second.timestamp, x.first) < std::tie(y.second.timestamp, y.first);
  });
  Generated out;
  out.ops.reserve(b.staged.size());
  for (auto& [seq, op] : b.staged) out.ops.push_back(std::move(op));
  out.truth = std::move(truth);
  return out;
}

std::size_t GroundTruth::node_total() const { return std::accumulate(nodes.begin(), nodes.end(), std::size_t{0}); }
std::size_t GroundTruth::edge_total() const { return std::accumulate(edges.begin(), edges.end(), std::size_t{0}); }

namespace {

ordered_json dist_json(const CountDistribution& d) { return {{"mean", d.mean}, {"dispersion", d.dispersion}}; }

void read_dist(const json& j, const char* key, CountDistribution& d) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  d.mean = v.value("mean", d.mean);
  d.dispersion = v.value("dispersion", d.dispersion);
}

}  // namespace

std::string config_json(const GenConfig& c) {
  ordered_json j;
  j["seed"] = c.seed;
  j["n_users"] = c.n_users;
  j["n_posts"] = c.n_posts;
  j["comments_per_post"] = dist_json(c.comments_per_post);
  j["votes_per_post"] = dist_json(c.votes_per_post);
  j["votes_per_comment"] = dist_json(c.votes_per_comment);
  j["reply_to_comment_prob"] = c.reply_to_comment_prob;
  j["follow_density"] = c.follow_density;
  j["time_range"] = {{"t1", c.time_range.t1()}, {"t2", c.time_range.t2()}};
  j["n_categories"] = c.n_categories;
  j["category_zipf"] = c.category_zipf;
  j["payout"] = {{"zero_inflation", c.payout.zero_inflation},
                 {"log_mean", c.payout.log_mean},
                 {"log_sigma", c.payout.log_sigma},
                 {"engagement_beta", c.payout.engagement_beta},
                 {"zero_engagement_coupling", c.payout.zero_engagement_coupling}};
  j["body_words"] = dist_json(c.body_words);
  j["downvote_prob"] = c.downvote_prob;
  j["activity_mean_days"] = c.activity_mean_days;
  return j.dump(2);
}

GenConfig parse_config_json(std::string_view text) {
  GenConfig c;
  try {
    const json j = json::parse(text);
    c.seed = j.value("seed", c.seed);
    c.n_users = j.value("n_users", c.n_users);
    c.n_posts = j.value("n_posts", c.n_posts);
    read_dist(j, "comments_per_post", c.comments_per_post);
    read_dist(j, "votes_per_post", c.votes_per_post);
    read_dist(j, "votes_per_comment", c.votes_per_comment);
    c.reply_to_comment_prob = j.value("reply_to_comment_prob", c.reply_to_comment_prob);
    c.follow_density = j.value("follow_density", c.follow_density);
    if (j.contains("time_range")) {
      const json& w = j.at("time_range");
      c.time_range = TimeWindow(w.value("t1", c.time_range.t1()), w.value("t2", c.time_range.t2()));
    }
    c.n_categories = j.value("n_categories", c.n_categories);
    c.category_zipf = j.value("category_zipf", c.category_zipf);
    if (j.contains("payout")) {
      const json& p = j.at("payout");
      c.payout.zero_inflation = p.value("zero_inflation", c.payout.zero_inflation);
      c.payout.log_mean = p.value("log_mean", c.payout.log_mean);
      c.payout.log_sigma = p.value("log_sigma", c.payout.log_sigma);
      c.payout.engagement_beta = p.value("engagement_beta", c.payout.engagement_beta);
      c.payout.zero_engagement_coupling = p.value("zero_engagement_coupling", c.payout.zero_engagement_coupling);
    }
    read_dist(j, "body_words", c.body_words);
    c.downvote_prob = j.value("downvote_prob", c.downvote_prob);
    c.activity_mean_days = j.value("activity_mean_days", c.activity_mean_days);
  } catch (const json::exception& e) {
    invalid(std::string("bad config JSON: ") + e.what());
  } catch (const Error& e) {
    invalid(e.what());
  }
  return c;
}

std::string ground_truth_json(const GroundTruth& t) {
  ordered_json j;
  j["ops"] = t.ops;
  ordered_json nodes, edges;
  for (NodeKind k : kAllNodeKinds) nodes[std::string(to_string(k))] = t.nodes[index_of(k)];
  for (EdgeKind k : kAllEdgeKinds) edges[std::string(to_string(k))] = t.edges[index_of(k)];
  j["nodes"] = std::move(nodes);
  j["edges"] = std::move(edges);
  j["edits"] = t.edits;
  j["zero_payouts"] = t.zero_payouts;
  ordered_json posts = ordered_json::array();
  for (const PostTally& p : t.posts) {
    posts.push_back(ordered_json{{"permlink", p.permlink},
                                 {"votes", p.votes},
                                 {"direct_comments", p.direct_comments},
                                 {"all_comments", p.all_comments},
                                 {"payout", p.payout}});
  }
  j["posts"] = std::move(posts);
  ordered_json users = ordered_json::array();
  for (const UserTally& u : t.users) {
    users.push_back(ordered_json{
        {"name", u.name}, {"votes_cast", u.votes_cast}, {"authored", u.authored}, {"follows", u.follows}});
  }
  j["users"] = std::move(users);
  return j.dump(1);
}

GroundTruth parse_ground_truth_json(std::string_view text) {
  GroundTruth t;
  try {
    const json j = json::parse(text);
    t.ops = j.at("ops").get<std::size_t>();
    for (NodeKind k : kAllNodeKinds) t.nodes[index_of(k)] = j.at("nodes").at(std::string(to_string(k)));
    for (EdgeKind k : kAllEdgeKinds) t.edges[index_of(k)] = j.at("edges").at(std::string(to_string(k)));
    t.edits = j.at("edits").get<std::size_t>();
    t.zero_payouts = j.at("zero_payouts").get<std::size_t>();
    for (const json& p : j.at("posts")) {
      t.posts.push_back(PostTally{p.at("permlink"), p.at("votes"), p.at("direct_comments"), p.at("all_comments"),
                                  p.at("payout")});
    }
    for (const json& u : j.at("users")) {
      t.users.push_back(UserTally{u.at("name"), u.at("votes_cast"), u.at("authored"), u.at("follows")});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormatError, std::string("bad ground truth JSON: ") + e.what());
  }
  return t;
}

}  // namespace dhg
