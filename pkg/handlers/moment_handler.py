import logging

import numpy as np

from handlers.base_handler import BaseHandler
from services.moment_verifier import (
    FourierCurve,
    MomentVerifier,
    build_support_product,
    random_separated_angles,
)

logger = logging.getLogger(__name__)


class MomentHandler(BaseHandler):
    """Support certificates for the moment curve, optionally with a perturbation sweep."""

    command = "moment"

    def __init__(self, config, report_writer):
        super().__init__(config, report_writer)
        self.verifier = MomentVerifier(config)

    def handle(self, run_config):
        tolerances = self.tolerances(run_config)
        self.verifier.tolerances = tolerances
        results, findings = [], []
        ok = True
        for r in run_config.r_values:
            if run_config.angles is not None:
                angles = run_config.angles
            else:
                rng = np.random.default_rng([run_config.seed, r])
                angles = random_separated_angles(r, rng, 2 * np.pi / (8 * r)).tolist()

            product = build_support_product(angles, tolerances.tol_sep)
            certificates = [self.verifier.verify_support(None, angles, product, run_config.grid_n)]
            curve = FourierCurve.moment(r)
            nullspace = self.verifier.support_from_nullspace(curve, angles)
            certificates.append(self.verifier.verify_support(curve, angles, nullspace, run_config.grid_n))
            for certificate in certificates:
                row = certificate.model_dump(mode="json")
                row["r"] = r
                results.append(row)
                if not certificate.passed:
                    ok = False
                    findings.append(f"r={r}: {certificate.construction} certificate failed at angles {angles}")

            if run_config.sweep:
                summary = self.verifier.stability_sweep(
                    r, run_config.trials, run_config.delta, run_config.seed, grid_n=run_config.grid_n
                )
                results.append(summary.model_dump(mode="json"))
                if summary.passes < summary.trials:
                    ok = False
                    findings.append(
                        f"r={r}: {summary.trials - summary.passes} of {summary.trials} perturbed curves "
                        f"failed at δ={summary.delta} ({summary.degenerate_trials} degenerate)"
                    )
        return self.emit(run_config, results, findings, ok=ok)
