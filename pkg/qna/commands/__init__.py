# Commands package: one module per group of subcommands
