// Live panel contents derived from the latest analysis report.  The
// document-valued helpers return exactly what the CLI prints for the same
// quiver, so parity is plain JSON equality.

import type { AnalysisDoc, ParamsDoc, PhiDoc } from "./types.js";

export function paramsPanelDoc(report: AnalysisDoc): ParamsDoc | null {
	return report.parameters ?? null;
}

export function phiPanelDoc(report: AnalysisDoc): PhiDoc | null {
	return report.phi ?? null;
}

export function paramsRows(params: ParamsDoc): [string, string][] {
	return [
		["r1", String(params.r1)],
		["r2", String(params.r2)],
		["s1", String(params.s1)],
		["s2", String(params.s2)],
	];
}

export function sideTotalsText(params: ParamsDoc): string {
	return `r̄ = ${params.r_bar}, s̄ = ${params.s_bar}`;
}

export function phiRows(phi: PhiDoc): string[] {
	return phi.pairs.map((p) => `(${p.n}, ${p.m}) × ${p.count}`);
}

/** Badge naming the derived-equivalence class by its canonical quadruple. */
export function derivedBadgeText(report: AnalysisDoc): string {
	if (!report.recognized || !report.parameters) {
		return report.reason ? `not in class: ${report.reason}` : "not in class";
	}
	const p = report.parameters;
	return `derived class (${p.r1}, ${p.r2}, ${p.s1}, ${p.s2})`;
}

export function mutationBadgeText(report: AnalysisDoc): string {
	if (!report.recognized || !report.parameters) return "";
	const p = report.parameters;
	const pair = [p.r_bar, p.s_bar].sort((a, b) => a - b);
	return `mutation class {${pair[0]}, ${pair[1]}}`;
}
