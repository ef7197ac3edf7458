/*!
  \file decomp_forge.cpp
  \brief `decomp-forge` command-line tool

  \verbatim
  decomp-forge decompose table.txt --bound x1,x4 [--free x2,x3] [--algorithm alpha]
  decomp-forge chart     table.txt --bound x1,x4
  decomp-forge check-fd  table.txt --lhs F --rhs D
  decomp-forge check-mvd table.txt --lhs F --rhs D
  decomp-forge verify    table.txt --table-g g.txt --table-h h.txt
  \endverbatim
*/

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <decomp/cli.hpp>

int main( int argc, char** argv )
{
  CLI::App app{ "Lossless functional decomposition of truth tables" };
  app.require_subcommand( 1 );

  decomp::run_config cfg;
  std::vector<std::string> bound;
  std::string free, lhs, rhs;
  std::string mcp = "exact", enc = "single";
  unsigned seed = 0u;

  auto const add_input = [&]( CLI::App* sub ) {
    sub->add_option( "input", cfg.input, "truth table file, - for stdin" )->required();
    sub->add_flag( "--extend-missing", cfg.extend_missing, "add missing input rows with output -" );
    sub->add_option( "-o,--output", cfg.output, "write the report to this file" );
  };
  auto const add_split = [&]( CLI::App* sub ) {
    sub->add_option( "--bound", bound, "bound set, comma separated (repeat for multiple decomposition)" )->required();
    sub->add_option( "--free", free, "free set, comma separated (default: inputs minus bound)" );
  };

  auto* decompose = app.add_subcommand( "decompose", "decompose a truth table" );
  add_input( decompose );
  add_split( decompose );
  decompose->add_option( "--algorithm", cfg.algorithm, "auto, alpha, beta, gamma or delta" )
      ->check( CLI::IsMember( { "auto", "alpha", "beta", "gamma", "delta" } ) );
  decompose->add_option( "--mcp", mcp, "clique partition: exact, greedy or enumerate" )
      ->check( CLI::IsMember( { "exact", "greedy", "enumerate" } ) );
  decompose->add_option( "--encoding", enc, "bridge encoding: single or binary" )
      ->check( CLI::IsMember( { "single", "binary" } ) );
  auto* seed_opt = decompose->add_option( "--seed", seed, "shuffle the column merge order with this seed" );
  decompose->add_flag( "--enumerate-gamma", cfg.enumerate_gamma, "list every cross-sub-chart merge" );
  decompose->add_option( "--limit", cfg.limit, "maximum number of enumerated decompositions" );
  decompose->add_option( "--emit-g", cfg.emit_g, "write table g to this file" );
  decompose->add_option( "--emit-h", cfg.emit_h, "write table h to this file" );

  auto* chart = app.add_subcommand( "chart", "print the decomposition chart" );
  add_input( chart );
  add_split( chart );

  std::map<std::string, CLI::App*> checks;
  for ( auto const* name : { "check-fd", "check-mvd" } )
  {
    auto* sub = app.add_subcommand( name, std::string( "check " ) + ( name[6] == 'f' ? "an FD" : "an MVD" ) );
    add_input( sub );
    sub->add_option( "--lhs", lhs, "left-hand attributes" )->required();
    sub->add_option( "--rhs", rhs, "right-hand attributes" )->required();
    checks[name] = sub;
  }

  auto* verify = app.add_subcommand( "verify", "verify tables g and h against a truth table" );
  add_input( verify );
  verify->add_option( "--table-g", cfg.table_g, "table g" )->required();
  verify->add_option( "--table-h", cfg.table_h, "table h" )->required();

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::ParseError const& e )
  {
    auto const code = app.exit( e );
    return code == 0 ? 0 : 1;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  for ( auto const& b : bound )
    cfg.bound.push_back( decomp::split_list( b ) );
  if ( !free.empty() )
    cfg.free = decomp::split_list( free );
  cfg.lhs = decomp::split_list( lhs );
  cfg.rhs = decomp::split_list( rhs );
  cfg.mcp = mcp == "greedy" ? decomp::mcp_mode::greedy : mcp == "enumerate" ? decomp::mcp_mode::enumerate : decomp::mcp_mode::exact;
  cfg.enc = enc == "binary" ? decomp::encoding::binary_bits : decomp::encoding::single_var;
  if ( seed_opt->count() > 0u )
    cfg.seed = seed;
  return decomp::run( cfg, std::cout, std::cerr );
}
