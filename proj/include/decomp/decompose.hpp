/*!
  \file decompose.hpp
  \brief Functional decomposition F = h( g( Y ), Z ) by column merging

  Four procedures share one back end:

  - `fda_alpha`  disjoint bound/free sets: merge equivalent chart columns;
  - `fda_beta`   several disjoint bound sets, one alpha pass each;
  - `fda_gamma`  overlapping sets: merge inside each diagonal sub-chart,
                 then merge orthogonal columns across sub-charts;
  - `fda_delta`  don't-cares: merge the cliques of a minimum clique
                 partition of the compatible graph.

  The columns of the final chart are the blocks of the bridge partition
  π_W. Every returned decomposition carries a verification report that
  re-derives FD Y → W, FD WZ → F, the MVD, the join round trip and the
  recomposition from the emitted tables.
*/

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "chart.hpp"
#include "cliquecover.hpp"
#include "dependency.hpp"
#include "partition.hpp"
#include "relation.hpp"

namespace decomp
{

enum class encoding
{
  single_var,
  binary_bits
};

enum class mcp_mode
{
  exact,
  greedy,
  enumerate
};

struct decompose_params
{
  /*! \brief How blocks of π_W are encoded in the emitted tables. */
  encoding enc{ encoding::single_var };

  /*! \brief Name of the bridge attribute (prefix for binary bits and multiple decomposition). */
  std::string bridge_name{ "W" };

  /*! \brief Clique partition strategy for incompletely specified functions. */
  mcp_mode mcp{ mcp_mode::exact };

  /*! \brief Cap on enumerated solutions. */
  std::size_t enumerate_limit{ 64u };

  /*! \brief Largest compatible graph solved exactly. */
  std::size_t exact_node_bound{ default_exact_node_bound };

  /*! \brief Brute-force maximality check of alpha runs when |π_Y| is at most this. */
  std::size_t maximality_bound{ 5u };

  /*! \brief Brute-force minimality check of gamma runs when |π_Y| is at most this. */
  std::size_t minimality_bound{ 8u };

  /*! \brief Randomizes the order of equivalent-column merges (alpha, beta). */
  std::mt19937* shuffle{ nullptr };
};

struct verification_report
{
  dependency_report fd_y_w;
  dependency_report fd_wz_f;
  dependency_report mvd;
  bool mvd_ok{ false };
  bool join_roundtrip{ false };
  bool recomposition{ false };

  bool all() const { return fd_y_w.holds && fd_wz_f.holds && mvd_ok && join_roundtrip && recomposition; }
};

struct decomposition
{
  std::string algorithm;
  attr_set bound;
  attr_set free;
  attr_set common;
  std::string output;

  partition bridge_partition;
  attr_set bridge_attrs;
  domain w_domain;
  /*! \brief W code (block index of π_W) per tuple id. */
  std::map<tuple_id, std::size_t> w_assignment;

  relation source;
  /*! \brief Source with bridge attributes added; don't-cares resolved where the merged chart fixes them. */
  relation with_bridge;
  relation table_g;
  relation table_h;

  chart initial_chart;
  std::optional<chart> intermediate_chart;
  chart final_chart;

  std::size_t k{ 0u };
  unsigned bits{ 0u };
  bool nontrivial{ false };
  /*! \brief Result of the brute-force optimality check, if it ran. */
  std::optional<bool> optimal;
  std::vector<std::string> notes;
  verification_report verification;
};

struct multi_verification
{
  std::vector<dependency_report> fd_parts;
  dependency_report fd_h;
  std::vector<bool> mvd_parts;
  bool join_roundtrip{ false };
  bool recomposition{ false };

  bool all() const
  {
    return fd_h.holds && join_roundtrip && recomposition &&
           std::all_of( fd_parts.begin(), fd_parts.end(), []( auto const& r ) { return r.holds; } ) &&
           std::all_of( mvd_parts.begin(), mvd_parts.end(), []( bool b ) { return b; } );
  }
};

struct multi_decomposition
{
  std::vector<decomposition> parts;
  attr_set free;
  relation source;
  relation with_bridges;
  relation table_h;
  multi_verification verification;
};

inline unsigned ceil_log2( std::size_t n )
{
  unsigned b = 0u;
  while ( ( std::size_t{ 1 } << b ) < n )
    ++b;
  return b;
}

/*! \brief Names of the bridge attributes for `k` blocks. */
inline attr_set bridge_names( std::string const& base, std::size_t k, encoding enc )
{
  if ( enc == encoding::single_var )
    return { base };
  auto const nbits = std::max( 1u, ceil_log2( k ) );
  auto const sep = !base.empty() && std::isdigit( static_cast<unsigned char>( base.back() ) ) ? "_" : "";
  attr_set names;
  for ( auto b = nbits; b-- > 0u; )
    names.push_back( base + sep + std::to_string( b ) );
  return names;
}

/*! \brief Adds bridge attributes carrying the block index of each tuple.

  Blocks are numbered 0..k-1 in canonical order. `single_var` adds one
  attribute over { 0 .. k-1 } (at least two symbols); `binary_bits` adds
  ⌈log₂ k⌉ binary attributes, most significant first.
*/
inline relation assign_w( relation const& r, partition const& pw, std::string const& w_name, encoding enc )
{
  auto const ids = r.ids();
  if ( pw.universe() != ids )
    throw decomp_error( "bridge partition is not over the relation's tuples" );
  auto const names = bridge_names( w_name, pw.size(), enc );
  auto schema = r.schema();
  for ( auto const& n : names )
  {
    if ( r.has_attr( n ) )
      throw decomp_error( "bridge attribute '" + n + "' collides with an existing attribute" );
    domain dom{ n, {} };
    auto const card = enc == encoding::single_var ? std::max<std::size_t>( pw.size(), 2u ) : 2u;
    for ( auto v = 0u; v < card; ++v )
      dom.values.push_back( std::to_string( v ) );
    schema.push_back( { std::move( dom ), attr_role::bridge } );
  }
  relation out( std::move( schema ) );
  for ( auto const& t : r.tuples() )
  {
    auto values = t.values;
    auto const code = pw.block_of( t.id );
    if ( enc == encoding::single_var )
    {
      values.push_back( static_cast<int>( code ) );
    }
    else
    {
      for ( auto b = names.size(); b-- > 0u; )
        values.push_back( static_cast<int>( ( code >> b ) & 1u ) );
    }
    out.add_tuple( std::move( values ), t.id, t.sources );
  }
  return out;
}

namespace detail
{

inline relation with_roles( relation const& r, attr_set const& names, attr_role role )
{
  auto schema = r.schema();
  for ( auto& a : schema )
  {
    if ( std::find( names.begin(), names.end(), a.name() ) != names.end() )
      a.role = role;
  }
  relation out( std::move( schema ) );
  for ( auto const& t : r.tuples() )
    out.add_tuple( t.values, t.id, t.sources );
  return out;
}

/* Every specified tuple of `source` appears in `rec` with the same output, and `rec` is a truth table over the same inputs. */
inline bool recomposition_matches( relation const& source, relation const& rec )
{
  if ( !rec.is_truth_table() || rec.size() != source.size() )
    return false;
  auto const names = source.names();
  for ( auto const& n : names )
  {
    if ( !rec.has_attr( n ) )
      return false;
  }
  auto const perm = rec.attr_indices( names );
  auto const in = source.attr_indices( source.inputs() );
  auto const out = source.attr_index( source.outputs().front() );
  std::map<std::vector<int>, int> produced;
  for ( auto const& t : rec.tuples() )
  {
    auto const v = relation::restrict( t, perm );
    produced[relation::restrict( tuple{ v, 0, {} }, in )] = v[out];
  }
  for ( auto const& t : source.tuples() )
  {
    auto it = produced.find( relation::restrict( t, in ) );
    if ( it == produced.end() )
      return false;
    if ( t.values[out] != dont_care && it->second != t.values[out] )
      return false;
  }
  return true;
}

inline void require_single_output( relation const& r )
{
  if ( r.outputs().size() != 1u )
    throw decomp_error( "decomposition needs exactly one output attribute" );
}

inline void require_cover( relation const& r, attr_set const& y, attr_set const& z )
{
  require_attrs( r, y );
  require_attrs( r, z );
  auto const in = r.inputs();
  auto const yz = set_union( y, z );
  for ( auto const& a : yz )
  {
    if ( std::find( in.begin(), in.end(), a ) == in.end() )
      throw decomp_error( "'" + a + "' is not an input attribute" );
  }
  if ( yz.size() != in.size() )
    throw decomp_error( "bound and free sets must cover every input attribute" );
}

/* Calls fn on every set partition of { 0 .. n-1 } with at most max_blocks blocks (restricted growth order). */
inline void for_each_set_partition( std::size_t n, std::size_t max_blocks,
                                    std::function<void( std::vector<std::size_t> const& )> const& fn )
{
  std::vector<std::size_t> rgs( n, 0u );
  std::function<void( std::size_t, std::size_t )> rec = [&]( std::size_t i, std::size_t used ) {
    if ( i == n )
    {
      fn( rgs );
      return;
    }
    for ( auto b = 0u; b <= used && b < max_blocks; ++b )
    {
      rgs[i] = b;
      rec( i + 1u, std::max<std::size_t>( used, b + 1u ) );
    }
  };
  if ( n == 0u )
  {
    fn( rgs );
    return;
  }
  rec( 0u, 0u );
}

/* π_W* built by grouping the chart's π_Y blocks by `rgs`. */
inline partition grouped_blocks( chart const& ch, std::vector<std::size_t> const& rgs )
{
  std::map<std::size_t, partition::block> groups;
  for ( auto b = 0u; b < rgs.size(); ++b )
  {
    auto& g = groups[rgs[b]];
    g.insert( g.end(), ch.bound_blocks[b].tuples.begin(), ch.bound_blocks[b].tuples.end() );
  }
  std::vector<partition::block> blocks;
  for ( auto& [k, ids] : groups )
    blocks.push_back( std::move( ids ) );
  return partition( std::move( blocks ) );
}

/* Properties (2) and (3) for a candidate π_W* on a fully specified source. */
inline bool bridge_candidate_valid( relation const& source, attr_set const& z, attr_set const& y, attr_set const& common,
                                    partition const& candidate )
{
  auto const r = assign_w( source, candidate, "W*", encoding::single_var );
  auto const f = source.outputs().front();
  if ( !holds_fd( r, set_union( { "W*" }, z ), { f } ).holds )
    return false;
  return holds_mvd( r, set_union( { "W*" }, common ), set_minus( y, common ) ).holds;
}

inline decomposition finish( std::string algorithm, relation const& source, chart const& initial, chart const& final,
                             decompose_params const& params )
{
  decomposition d;
  d.algorithm = std::move( algorithm );
  d.bound = initial.bound;
  d.free = initial.free;
  d.common = initial.common;
  d.output = initial.output;
  d.source = source;
  d.initial_chart = initial;
  d.final_chart = final;

  /* π_W: one block per final column; dropped don't-care blocks join the first block */
  std::vector<partition::block> blocks;
  for ( auto c = 0u; c < final.columns.size(); ++c )
    blocks.push_back( final.column_tuples( c ) );
  std::vector<tuple_id> dropped;
  for ( auto b : final.dropped )
    dropped.insert( dropped.end(), final.bound_blocks[b].tuples.begin(), final.bound_blocks[b].tuples.end() );
  std::optional<std::size_t> first_column;
  if ( !blocks.empty() )
  {
    first_column = static_cast<std::size_t>(
        std::min_element( blocks.begin(), blocks.end(), []( auto const& a, auto const& b ) { return a.front() < b.front(); } ) -
        blocks.begin() );
    blocks[*first_column].insert( blocks[*first_column].end(), dropped.begin(), dropped.end() );
  }
  else
  {
    blocks.push_back( dropped );
    d.notes.push_back( "every output is unspecified; the decomposition is degenerate" );
  }
  d.bridge_partition = partition( blocks );

  /* resolve don't-cares that the merged chart pins down */
  std::map<tuple_id, std::size_t> row_of;
  for ( auto r = 0u; r < final.rows.size(); ++r )
  {
    for ( auto id : final.rows[r].tuples )
      row_of[id] = r;
  }
  std::map<tuple_id, std::size_t> column_of;
  for ( auto c = 0u; c < final.columns.size(); ++c )
  {
    for ( auto id : final.column_tuples( c ) )
      column_of[id] = c;
  }
  if ( first_column )
  {
    for ( auto id : dropped )
      column_of[id] = *first_column;
  }
  auto const out_idx = source.attr_index( d.output );
  relation resolved( source.schema() );
  for ( auto const& t : source.tuples() )
  {
    auto values = t.values;
    if ( values[out_idx] == dont_care && column_of.count( t.id ) )
    {
      auto const& e = final.columns[column_of.at( t.id )].entries[row_of.at( t.id )];
      if ( e.state == cell_state::value )
        values[out_idx] = e.value;
    }
    resolved.add_tuple( std::move( values ), t.id, t.sources );
  }

  d.k = d.bridge_partition.size();
  d.bits = ceil_log2( d.k );
  std::size_t bound_space = 1u;
  for ( auto const& a : d.bound )
    bound_space *= source.attr( a ).dom.size();
  d.nontrivial = d.bits < ceil_log2( bound_space );

  d.with_bridge = assign_w( resolved, d.bridge_partition, params.bridge_name, params.enc );
  d.bridge_attrs = bridge_names( params.bridge_name, d.k, params.enc );
  d.w_domain = domain{ params.bridge_name, {} };
  for ( auto v = 0u; v < std::max<std::size_t>( d.k, 2u ); ++v )
    d.w_domain.values.push_back( std::to_string( v ) );
  for ( auto const& id : source.ids() )
    d.w_assignment[id] = d.bridge_partition.block_of( id );

  d.table_g = with_roles( project( d.with_bridge, set_union( d.bound, d.bridge_attrs ) ), d.bridge_attrs, attr_role::output );
  d.table_h = with_roles( project( d.with_bridge, set_union( set_union( d.bridge_attrs, d.free ), { d.output } ) ),
                          d.bridge_attrs, attr_role::input );

  auto& v = d.verification;
  v.fd_y_w = holds_fd( d.with_bridge, d.bound, d.bridge_attrs );
  v.fd_wz_f = holds_fd( d.with_bridge, set_union( d.bridge_attrs, d.free ), { d.output } );
  auto const mvd_lhs = set_union( d.bridge_attrs, d.common );
  auto const mvd_rhs = set_minus( d.bound, d.common );
  v.mvd = holds_mvd( d.with_bridge, mvd_lhs, mvd_rhs );
  v.mvd_ok = lossless_check( d.with_bridge, mvd_lhs, mvd_rhs,
                             set_minus( d.with_bridge.names(), set_union( mvd_lhs, mvd_rhs ) ) ) &&
             v.mvd.holds;
  v.join_roundtrip = relations_equal( d.with_bridge, natural_join( d.table_g, d.table_h ) );
  v.recomposition = recomposition_matches( source, project( natural_join( d.table_g, d.table_h ), source.names() ) );
  return d;
}

inline void require_specified( relation const& r, char const* what )
{
  if ( r.has_dont_care() )
    throw decomp_error( std::string( what ) + " needs a completely specified function; use fda_delta" );
}

} // namespace detail

/*! \brief T_g ⋈ T_h projected back onto the source attributes. */
inline relation recompose( decomposition const& d )
{
  return project( natural_join( d.table_g, d.table_h ), d.source.names() );
}

/*! \brief Brute-force check that every valid bridge partition refines π_W.

  Enumerates all groupings of the π_Y blocks; a grouping is valid when it
  satisfies FD WZ → F and MVD W ↠ Y (FD Y → W holds by construction).
*/
inline bool check_maximality( decomposition const& d )
{
  bool ok = true;
  detail::for_each_set_partition( d.initial_chart.bound_blocks.size(), d.initial_chart.bound_blocks.size(),
                                  [&]( auto const& rgs ) {
                                    if ( !ok )
                                      return;
                                    auto const cand = detail::grouped_blocks( d.initial_chart, rgs );
                                    if ( detail::bridge_candidate_valid( d.source, d.free, d.bound, d.common, cand ) &&
                                         !refines( cand, d.bridge_partition ) )
                                      ok = false;
                                  } );
  return ok;
}

/*! \brief Brute-force check that no valid bridge partition has fewer blocks than π_W. */
inline bool check_minimality( decomposition const& d )
{
  if ( d.k <= 1u )
    return true;
  bool ok = true;
  detail::for_each_set_partition( d.initial_chart.bound_blocks.size(), d.k - 1u, [&]( auto const& rgs ) {
    if ( !ok )
      return;
    if ( detail::bridge_candidate_valid( d.source, d.free, d.bound, d.common, detail::grouped_blocks( d.initial_chart, rgs ) ) )
      ok = false;
  } );
  return ok;
}

/*! \brief Disjoint decomposition of a completely specified function.

  Equivalent columns of M_ZY are merged until none remain; the final
  columns are the blocks of π_W.
*/
inline decomposition fda_alpha( relation const& r, attr_set const& y, attr_set const& z, decompose_params const& params = {} )
{
  detail::require_single_output( r );
  detail::require_cover( r, y, z );
  if ( !detail::disjoint( y, z ) )
    throw decomp_error( "bound and free sets overlap; use fda_gamma" );
  detail::require_specified( r, "fda_alpha" );

  auto const initial = build_chart( r, y, z );
  auto const final = merge_equivalent_columns( initial, params.shuffle );
  auto d = detail::finish( "alpha", r, initial, final, params );
  if ( initial.bound_blocks.size() <= params.maximality_bound )
    d.optimal = check_maximality( d );
  return d;
}

/*! \brief Multiple disjoint decomposition F = h( g1( Y1 ), ..., gK( YK ), Z ).

  Each π_Wk comes from an independent alpha pass with free set X − Yk.
  The h table is the projection onto W1..WK, Z, F with duplicate rows
  collapsed.
*/
inline multi_decomposition fda_beta( relation const& r, std::vector<attr_set> const& bound_sets, attr_set const& z,
                                     decompose_params const& params = {} )
{
  detail::require_single_output( r );
  detail::require_specified( r, "fda_beta" );
  if ( bound_sets.empty() )
    throw decomp_error( "fda_beta needs at least one bound set" );
  attr_set all = z;
  for ( auto const& y : bound_sets )
  {
    if ( y.empty() )
      throw decomp_error( "empty bound set" );
    if ( !detail::disjoint( all, y ) )
      throw decomp_error( "bound sets and free set must be pairwise disjoint" );
    all = detail::set_union( all, y );
  }
  detail::require_cover( r, all, {} );

  multi_decomposition m;
  m.free = z;
  m.source = r;
  auto const inputs = r.inputs();
  m.with_bridges = r;
  attr_set ws;
  for ( auto k = 0u; k < bound_sets.size(); ++k )
  {
    auto p = params;
    p.bridge_name = params.bridge_name + std::to_string( k + 1u );
    m.parts.push_back( fda_alpha( r, bound_sets[k], detail::set_minus( inputs, bound_sets[k] ), p ) );
    auto const& part = m.parts.back();
    m.with_bridges = assign_w( m.with_bridges, part.bridge_partition, p.bridge_name, p.enc );
    ws = detail::set_union( ws, part.bridge_attrs );
  }
  auto const f = r.outputs().front();
  m.table_h = detail::with_roles( project( m.with_bridges, detail::set_union( detail::set_union( ws, z ), { f } ) ), ws,
                                  attr_role::input );

  auto& v = m.verification;
  v.fd_h = holds_fd( m.with_bridges, detail::set_union( ws, z ), { f } );
  if ( !v.fd_h.holds )
    throw consistency_error( "multiple decomposition violates " + v.fd_h.to_string() );
  for ( auto const& part : m.parts )
  {
    v.fd_parts.push_back( holds_fd( m.with_bridges, part.bound, part.bridge_attrs ) );
    auto const rest = detail::set_minus( m.with_bridges.names(), detail::set_union( part.bridge_attrs, part.bound ) );
    v.mvd_parts.push_back( lossless_check( m.with_bridges, part.bridge_attrs, part.bound, rest ) );
  }
  auto joined = m.table_h;
  for ( auto const& part : m.parts )
    joined = natural_join( part.table_g, joined );
  v.join_roundtrip = relations_equal( m.with_bridges, joined );
  v.recomposition = detail::recomposition_matches( r, project( joined, r.names() ) );
  return m;
}

namespace detail
{

struct gamma_setup
{
  chart initial;
  chart intermediate;
  /* per sub-chart, the intermediate columns belonging to it; sorted by descending size */
  std::vector<std::vector<std::size_t>> groups;
  std::size_t lambda{ 0u };
};

inline gamma_setup prepare_gamma( relation const& r, attr_set const& y, attr_set const& z )
{
  gamma_setup s{ build_chart( r, y, z ), {}, {}, 0u };
  s.intermediate = merge_equivalent_columns( s.initial );
  auto const& index = *s.intermediate.diagonal;
  s.groups.resize( index.groups.size() );
  for ( auto c = 0u; c < s.intermediate.columns.size(); ++c )
  {
    auto const& blocks = s.intermediate.columns[c].blocks;
    auto const g = index.group_of_block( blocks.front() );
    for ( auto b : blocks )
    {
      if ( index.group_of_block( b ) != g )
        throw consistency_error( "equivalent-column merge crossed sub-charts" );
    }
    s.groups[g].push_back( c );
  }
  std::stable_sort( s.groups.begin(), s.groups.end(), []( auto const& a, auto const& b ) { return a.size() > b.size(); } );
  s.lambda = s.groups.empty() ? 0u : s.groups.front().size();
  return s;
}

/* slots[i] collects the intermediate columns merged into final column i */
inline decomposition gamma_from_slots( relation const& r, gamma_setup const& s, std::vector<std::vector<std::size_t>> const& slots,
                                       decompose_params const& params )
{
  auto const final = merge_orthogonal( s.intermediate, slots );
  auto d = finish( "gamma", r, s.initial, final, params );
  d.intermediate_chart = s.intermediate;
  if ( d.k != s.lambda )
    throw consistency_error( "gamma produced " + std::to_string( d.k ) + " blocks, expected " + std::to_string( s.lambda ) );
  if ( s.initial.bound_blocks.size() <= params.minimality_bound )
    d.optimal = check_minimality( d );
  return d;
}

} // namespace detail

/*! \brief Non-disjoint decomposition (Y ∩ Z = C nonempty).

  Merges equivalent columns inside each diagonal sub-chart, then merges
  orthogonal columns across sub-charts: the largest sub-chart fixes λ
  slots, and the i-th column of every other sub-chart (canonical order)
  joins slot i. Falls back to `fda_alpha` when C is empty.
*/
inline decomposition fda_gamma( relation const& r, attr_set const& y, attr_set const& z, decompose_params const& params = {} )
{
  detail::require_single_output( r );
  detail::require_cover( r, y, z );
  if ( detail::disjoint( y, z ) )
  {
    auto d = fda_alpha( r, y, z, params );
    d.notes.push_back( "bound and free sets are disjoint; ran the disjoint procedure" );
    return d;
  }
  detail::require_specified( r, "fda_gamma" );

  auto const s = detail::prepare_gamma( r, y, z );
  std::vector<std::vector<std::size_t>> slots;
  for ( auto c : s.groups.front() )
    slots.push_back( { c } );
  for ( auto g = 1u; g < s.groups.size(); ++g )
  {
    for ( auto i = 0u; i < s.groups[g].size(); ++i )
      slots[i].push_back( s.groups[g][i] );
  }
  return detail::gamma_from_slots( r, s, slots, params );
}

/*! \brief Every way of merging the sub-charts' columns into λ final columns, at most `limit`.

  The first entry is the `fda_gamma` result.
*/
inline std::vector<decomposition> fda_gamma_enumerate( relation const& r, attr_set const& y, attr_set const& z,
                                                       decompose_params const& params = {} )
{
  detail::require_single_output( r );
  detail::require_cover( r, y, z );
  if ( detail::disjoint( y, z ) )
    return { fda_gamma( r, y, z, params ) };
  detail::require_specified( r, "fda_gamma" );

  auto const s = detail::prepare_gamma( r, y, z );
  std::vector<decomposition> out;
  std::vector<std::vector<std::size_t>> slots;
  for ( auto c : s.groups.front() )
    slots.push_back( { c } );

  std::function<void( std::size_t, std::size_t, std::vector<bool>& )> place = [&]( std::size_t g, std::size_t i,
                                                                                  std::vector<bool>& taken ) {
    if ( out.size() >= params.enumerate_limit )
      return;
    if ( g == s.groups.size() )
    {
      out.push_back( detail::gamma_from_slots( r, s, slots, params ) );
      return;
    }
    if ( i == s.groups[g].size() )
    {
      std::vector<bool> fresh( s.lambda, false );
      place( g + 1u, 0u, fresh );
      return;
    }
    for ( auto slot = 0u; slot < s.lambda; ++slot )
    {
      if ( taken[slot] )
        continue;
      taken[slot] = true;
      slots[slot].push_back( s.groups[g][i] );
      place( g, i + 1u, taken );
      slots[slot].pop_back();
      taken[slot] = false;
    }
  };
  std::vector<bool> taken( s.lambda, false );
  place( 1u, 0u, taken );
  return out;
}

/*! \brief Decomposition of an incompletely specified function.

  Drops all-don't-care columns, builds the compatible graph and merges
  each clique of a minimum clique partition (or of every one, in
  `mcp_mode::enumerate`).
*/
inline std::vector<decomposition> fda_delta( relation const& r, attr_set const& y, attr_set const& z,
                                             decompose_params const& params = {} )
{
  detail::require_single_output( r );
  detail::require_cover( r, y, z );
  if ( !detail::disjoint( y, z ) )
    throw decomp_error( "fda_delta needs disjoint bound and free sets" );

  auto const initial = build_chart( r, y, z );
  auto const reduced = drop_dontcare_columns( initial );
  if ( reduced.columns.empty() )
    return { detail::finish( "delta", r, initial, reduced, params ) };

  auto const g = build_compat_graph( reduced );
  std::vector<clique_partition> covers;
  switch ( params.mcp )
  {
  case mcp_mode::exact:
    covers.push_back( mcp_exact( g, params.exact_node_bound ) );
    break;
  case mcp_mode::greedy:
    covers.push_back( mcp_greedy( g ) );
    break;
  case mcp_mode::enumerate:
    covers = mcp_enumerate( g, params.enumerate_limit, params.exact_node_bound );
    break;
  }

  std::vector<decomposition> out;
  for ( auto const& cover : covers )
  {
    if ( !is_valid_partition( g, cover ) )
      throw consistency_error( "clique partition is not valid for the compatible graph" );
    out.push_back( detail::finish( "delta", r, initial, merge_column_sets( reduced, cover.cliques ), params ) );
  }
  return out;
}

} // namespace decomp
