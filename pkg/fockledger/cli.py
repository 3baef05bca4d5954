import json
import logging
import sys
from functools import wraps

import click

import fockledger
from fockledger.claims import CLAIMS
from fockledger.errors import (
    CutoffOverflow,
    InvalidDistribution,
    InvalidParams,
    UnsupportedSpec,
    ZeroState,
)
from fockledger.families import build, parse_spec
from fockledger.fock import CutoffPolicy, distribution_of, dump_distribution, dump_state
from fockledger.logging import REPORT_FORMATS, ReportWriter
from fockledger.meta import Meta
from fockledger.operators import apply_chain
from fockledger.statistics import predictions, stats
from fockledger.utils.utils import str2list, to_jsonable
from fockledger.verifier import Verifier, failed_ids, summarize

logger = logging.getLogger(__name__)

EXIT_FAILED_CLAIMS = 1
EXIT_INVALID = 2
EXIT_ZERO_STATE = 3
EXIT_CUTOFF_OVERFLOW = 4


def exit_codes(f):
    """Map fockledger errors to the command's exit code."""

    @wraps(f)
    def wrapped_f(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return f(*args, **kwargs)
        except ZeroState as e:
            click.echo(f"Error: zero state at step {e.step}: {e}", err=True)
            ctx.exit(EXIT_ZERO_STATE)
        except CutoffOverflow as e:
            click.echo(f"Error: {e}", err=True)
            ctx.exit(EXIT_CUTOFF_OVERFLOW)
        except (InvalidParams, InvalidDistribution, UnsupportedSpec) as e:
            click.echo(f"Error: {type(e).__name__}: {e}", err=True)
            ctx.exit(EXIT_INVALID)

    return wrapped_f


def setup(ctx, config):
    """Initialize logging and config for one command and record the run."""

    options = ctx.obj
    fockledger.init(
        log_dir=options["log_dir"],
        level=logging.INFO if options["verbose"] else logging.WARNING,
        config=config,
        config_dir=options["config_dir"],
    )
    logging.getLogger().setLevel(logging.INFO if options["verbose"] else logging.WARNING)

    cmd_msg = " ".join(sys.argv)
    logger.info(f"COMMAND: {cmd_msg}")
    writer = ReportWriter()
    writer.write_command(cmd_msg)
    writer.add_config(Meta.config)
    writer.write_config()
    return writer


def fock_overrides(tail_tol):
    return {"fock_config": {"tail_tol": tail_tol}} if tail_tol is not None else {}


def echo_json(payload, path=None):
    text = json.dumps(to_jsonable(payload), indent=2)
    if path:
        with open(path, "w") as f:
            f.write(text + "\n")
        logger.info(f"Writing {path}")
    click.echo(text)


@click.group()
@click.option("--log-dir", default=None, help="Root directory of run logs")
@click.option(
    "--config-dir",
    default=".",
    help="Where to start looking for fockledger-config.yaml",
)
@click.option("--verbose", type=bool, default=True, help="Log at INFO instead of WARNING")
@click.version_option(fockledger.__version__, prog_name="fockledger")
@click.pass_context
def cli(ctx, log_dir, config_dir, verbose):
    """Truncated Fock space states, operators and photon statistics."""

    ctx.obj = {"log_dir": log_dir, "config_dir": config_dir, "verbose": verbose}


@cli.command()
@click.argument("spec")
@click.option("--out", help="Write the n,p_n distribution CSV here")
@click.option("--state-out", help="Write the n,re_c,im_c amplitude CSV here")
@click.option("--stats", "stats_out", help="Write the statistics JSON here")
@click.option("--tail-tol", type=float, help="Admitted tail mass beyond the cutoff")
@click.pass_context
@exit_codes
def state(ctx, spec, out, state_out, stats_out, tail_tol):
    """Build the state of a family spec such as negbin:xi=0.5,mu=2."""

    setup(ctx, fock_overrides(tail_tol))
    spec = parse_spec(spec)
    built = build(spec, CutoffPolicy.from_config())
    logger.info(f"Built {spec.to_text()} with cutoff {built.cutoff}")
    dist = distribution_of(built)

    if out:
        dump_distribution(dist, out)
    if state_out:
        dump_state(built, state_out)

    echo_json(
        {
            "spec": spec.to_text(),
            "cutoff": built.cutoff,
            "stats": stats(dist).to_dict(),
            "predictions": predictions(dist).to_dict(),
        },
        stats_out,
    )


@cli.command()
@click.argument("spec")
@click.argument("ops")
@click.option("--out", help="Write the per-step statistics JSON here")
@click.option("--tail-tol", type=float, help="Admitted tail mass beyond the cutoff")
@click.pass_context
@exit_codes
def apply(ctx, spec, ops, out, tail_tol):
    """Apply a comma separated chain of sub, add, eminus and eplus."""

    setup(ctx, fock_overrides(tail_tol))
    ops = str2list(ops)
    if not ops:
        raise InvalidParams("the operator chain is empty")

    policy = CutoffPolicy.from_config()
    spec = parse_spec(spec)
    built = build(spec, policy)
    logger.info(f"Built {spec.to_text()} with cutoff {built.cutoff}")
    steps = apply_chain(built, ops, policy=policy)

    echo_json(
        [
            {"step": step, "op": op, "cutoff": result.cutoff, **report.to_dict()}
            for step, (op, (result, report)) in enumerate(zip(ops, steps), start=1)
        ],
        out,
    )


@cli.command()
@click.option("--filter", "prefix", help="Only run claims whose id starts with this")
@click.option("--seed", type=int, help="Seed of the randomized draws")
@click.option("--format", "format", type=click.Choice(REPORT_FORMATS), help="Report format")
@click.option("--tail-tol", type=float, help="Admitted tail mass beyond the cutoff")
@click.option("--identity-tol", type=float, help="Tolerance of exact identities")
@click.option("--limit-tol", type=float, help="Tolerance of limit claims")
@click.option("--draws", type=int, help="Randomized states per family for each claim")
@click.option("--workers", type=int, help="Number of worker processes")
@click.option("--list", "list_claims", is_flag=True, help="List the registered claims")
@click.option("--out", help="Write the report here instead of stdout")
@click.pass_context
@exit_codes
def verify(
    ctx,
    prefix,
    seed,
    format,
    tail_tol,
    identity_tol,
    limit_tol,
    draws,
    workers,
    list_claims,
    out,
):
    """Run the registered numerical claims and report each one."""

    if list_claims:
        for claim_id in sorted(CLAIMS):
            click.echo(f"{claim_id}\t{CLAIMS[claim_id].anchor}")
        return

    verify_config = {
        key: value
        for key, value in [
            ("identity_tol", identity_tol),
            ("limit_tol", limit_tol),
            ("draws", draws),
            ("workers", workers),
            ("format", format),
        ]
        if value is not None
    }
    config = fock_overrides(tail_tol)
    if verify_config:
        config["verify_config"] = verify_config
    if seed is not None:
        config["meta_config"] = {"seed": seed}
    writer = setup(ctx, config)

    verifier = Verifier(prefix=prefix)
    if not verifier.claim_ids:
        raise click.UsageError(f"No registered claim starts with {prefix!r}")

    policy = CutoffPolicy.from_config()
    seed = int(Meta.config["meta_config"]["seed"])
    format = Meta.config["verify_config"]["format"]
    results = verifier.run(seed=seed, policy=policy)

    report = summarize(results, seed, policy.tail_tol)
    writer.add_report(report)
    writer.write_report(format=format)
    if out:
        writer.write_report(out, format=format)
    else:
        click.echo(writer.render(format), nl=False)

    logger.info(
        f"{report['passed']} passed, {report['failed']} failed, {report['skipped']} skipped"
    )
    failed = failed_ids(results)
    if failed:
        click.echo(f"Failed claims: {', '.join(failed)}", err=True)
        ctx.exit(EXIT_FAILED_CLAIMS)


def main():
    cli(prog_name="fockledger")


if __name__ == "__main__":
    main()
