"""
figlab MCP server - exposes the engine's commands as tools over stdio.
"""

import asyncio
import logging
import sys
from typing import Any, Dict, List, Optional

from mcp import types
from mcp.server import Server
from mcp.server.stdio import stdio_server

from .cli import CommandResult, execute
from .config import config
from .errors import FigLabError
from .generator import GeneratorParams
from .models import Command, RunConfig
from .module_parser import ParsedModule, module_parser

# Configure logging to use stderr and avoid interfering with MCP protocol
logging.basicConfig(
    level=getattr(logging, config.log_level.upper(), logging.INFO),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    stream=sys.stderr
)
logger = logging.getLogger(__name__)

server = Server("figlab")

_MODULE_PROPERTIES = {
    "path": {
        "type": "string",
        "description": "Path to a module file (JSON presentation or raw data)"
    },
    "module": {
        "type": "object",
        "description": "Inline module file contents, used when no path is given"
    },
    "window": {
        "type": "integer",
        "description": "Window override (defaults to 2*max_degree+2)"
    },
    "retries": {
        "type": "integer",
        "description": "Window-doubling retries on exhaustion"
    },
    "format": {
        "type": "string",
        "enum": ["json", "csv", "table"],
        "description": "Report format (default table)"
    },
}

TOOL_COMMANDS = {
    "validate_module": Command.VALIDATE,
    "compute_invariants": Command.INVARIANTS,
    "compute_homology": Command.HOMOLOGY,
    "local_cohomology": Command.LOCALCOH,
    "compute_depth": Command.DEPTH,
    "conjecture_scan": Command.CONJECTURE,
    "generate_module": Command.GENERATE,
}


@server.list_tools()
async def list_tools() -> list[types.Tool]:
    """List all available tools."""
    return [
        types.Tool(
            name="validate_module",
            description="Check a module file: group axioms, representation relations, equivariance and functoriality.",
            inputSchema={"type": "object", "properties": _MODULE_PROPERTIES}
        ),
        types.Tool(
            name="compute_invariants",
            description="Compute gd, td, regularity, Nagpal number, depths and local cohomology degrees with certification status.",
            inputSchema={"type": "object", "properties": _MODULE_PROPERTIES}
        ),
        types.Tool(
            name="compute_homology",
            description="Degreewise dimensions of FI_G-homology H_0..H_imax.",
            inputSchema={
                "type": "object",
                "properties": {
                    **_MODULE_PROPERTIES,
                    "imax": {"type": "integer", "description": "Highest homological index (default 2)"},
                }
            }
        ),
        types.Tool(
            name="local_cohomology",
            description="Degreewise dimensions and torsion degrees of the local cohomology modules.",
            inputSchema={"type": "object", "properties": _MODULE_PROPERTIES}
        ),
        types.Tool(
            name="compute_depth",
            description="Depth by local cohomology, by Ext against kG_0 and by derived derivatives, plus cd.",
            inputSchema={"type": "object", "properties": _MODULE_PROPERTIES}
        ),
        types.Tool(
            name="conjecture_scan",
            description="Compare reg(V) with max td(H^i_m(V)) + i on a module or a seeded random suite.",
            inputSchema={
                "type": "object",
                "properties": {
                    **_MODULE_PROPERTIES,
                    "seed": {"type": "integer", "description": "Suite seed when no module is given"},
                    "count": {"type": "integer", "description": "Suite size when no module is given"},
                }
            }
        ),
        types.Tool(
            name="generate_module",
            description="Emit a reproducible random presentation over F_2 or F_3 with G trivial or C2.",
            inputSchema={
                "type": "object",
                "properties": {
                    "seed": {"type": "integer", "description": "Random seed"},
                    "prime": {"type": "integer", "enum": [2, 3]},
                    "group_order": {"type": "integer", "enum": [1, 2]},
                },
                "required": ["seed"]
            }
        ),
    ]


@server.call_tool()
async def call_tool(name: str, arguments: dict) -> list[types.TextContent]:
    """Handle tool calls."""
    try:
        if not config.validate():
            error_message = "❌ **Configuration Error**\n\n"
            for error in config.get_validation_errors():
                error_message += f"• {error}\n"
            return [types.TextContent(type="text", text=error_message)]

        arguments = arguments or {}
        if name == "validate_module":
            return await handle_validate_module(arguments)
        elif name == "compute_invariants":
            return await handle_compute_invariants(arguments)
        elif name == "compute_homology":
            return await handle_compute_homology(arguments)
        elif name == "local_cohomology":
            return await handle_local_cohomology(arguments)
        elif name == "compute_depth":
            return await handle_compute_depth(arguments)
        elif name == "conjecture_scan":
            return await handle_conjecture_scan(arguments)
        elif name == "generate_module":
            return await handle_generate_module(arguments)
        else:
            return [types.TextContent(type="text", text=f"❌ Unknown tool: {name}")]

    except Exception as e:
        logger.error(f"Error in tool {name}: {e}")
        return [types.TextContent(type="text", text=f"❌ Error: {str(e)}")]


async def _dispatch(name: str, arguments: dict) -> list[types.TextContent]:
    result = await asyncio.to_thread(run_tool, name, arguments)
    return [types.TextContent(type="text", text=format_result(result))]


async def handle_validate_module(arguments: dict) -> list[types.TextContent]:
    """Handle module validation."""
    return await _dispatch("validate_module", arguments)


async def handle_compute_invariants(arguments: dict) -> list[types.TextContent]:
    """Handle the full invariant report."""
    return await _dispatch("compute_invariants", arguments)


async def handle_compute_homology(arguments: dict) -> list[types.TextContent]:
    return await _dispatch("compute_homology", arguments)


async def handle_local_cohomology(arguments: dict) -> list[types.TextContent]:
    return await _dispatch("local_cohomology", arguments)


async def handle_compute_depth(arguments: dict) -> list[types.TextContent]:
    return await _dispatch("compute_depth", arguments)


async def handle_conjecture_scan(arguments: dict) -> list[types.TextContent]:
    """Handle a conjecture scan over one module or a generated suite."""
    return await _dispatch("conjecture_scan", arguments)


async def handle_generate_module(arguments: dict) -> list[types.TextContent]:
    """Handle random presentation generation."""
    if "seed" not in arguments:
        return [types.TextContent(type="text", text="❌ generate_module needs a seed")]
    return await _dispatch("generate_module", arguments)


def _modules(arguments: Dict[str, Any]) -> List[ParsedModule]:
    if arguments.get("path"):
        return [module_parser.parse_file(arguments["path"])]
    if arguments.get("module") is not None:
        return [module_parser.parse_data(arguments["module"])]
    return []


def run_tool(name: str, arguments: Dict[str, Any]) -> CommandResult:
    """Run one tool synchronously; the server calls this on a worker thread."""
    command = TOOL_COMMANDS[name]
    run = RunConfig(
        command=command,
        window=arguments.get("window"),
        retries=arguments.get("retries", config.retries),
        output_format=arguments.get("format", config.default_format),
        seed=arguments.get("seed", 0),
        imax=arguments.get("imax", 2),
        count=arguments.get("count", config.suite_size),
    )
    params: Optional[GeneratorParams] = None
    if command == Command.GENERATE:
        params = GeneratorParams(prime=arguments.get("prime"), group_order=arguments.get("group_order"))
        return execute(run, params=params)
    try:
        modules = _modules(arguments)
    except FigLabError as e:
        return CommandResult(2, f"error: {e}\n")
    if not modules and command != Command.CONJECTURE:
        return CommandResult(2, "error: give a module path or an inline module\n")
    return execute(run, modules)


def format_result(result: CommandResult) -> str:
    if result.exit_code == 0:
        return result.output
    return f"❌ exit code {result.exit_code}\n\n{result.output}"


async def main():
    """Main entry point for the server."""
    logger.info("figlab MCP server starting")
    async with stdio_server() as (read_stream, write_stream):
        await server.run(
            read_stream,
            write_stream,
            server.create_initialization_options()
        )


def run():
    asyncio.run(main())


if __name__ == "__main__":
    run()
