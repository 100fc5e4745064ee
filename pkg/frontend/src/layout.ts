// Vertex placement.  A recognized quiver puts its non-oriented cycle on a
// circle, apexes just outside their cycle edge and branch vertices on
// outward rays; anything else falls back to a deterministic force layout.

import type { DecompositionDoc, QuiverDoc } from "./types.js";

export interface Point {
	x: number;
	y: number;
}

const TAU = Math.PI * 2;

function neighbourMap(quiver: QuiverDoc, allowed: Set<string>): Map<string, string[]> {
	const adj = new Map<string, string[]>();
	for (const v of quiver.vertices) {
		if (allowed.has(v)) adj.set(v, []);
	}
	for (const a of quiver.arrows) {
		if (allowed.has(a.from) && allowed.has(a.to)) {
			adj.get(a.from)?.push(a.to);
			adj.get(a.to)?.push(a.from);
		}
	}
	return adj;
}

export function circleLayout(
	quiver: QuiverDoc,
	dec: DecompositionDoc,
	width: number,
	height: number,
): Map<string, Point> {
	const cx = width / 2;
	const cy = height / 2;
	const radius = Math.min(width, height) * 0.32;
	const out = new Map<string, Point>();
	const cycle = dec.cycle;
	const angleOf = new Map<string, number>();
	cycle.forEach((v, i) => {
		const angle = -TAU / 4 + (TAU * i) / cycle.length;
		angleOf.set(v, angle);
		out.set(v, { x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) });
	});

	const edgeAngle = new Map<string, number>();
	dec.cycle_arrows.forEach((edge, i) => {
		const a = -TAU / 4 + (TAU * (i + 0.5)) / cycle.length;
		edgeAngle.set(edge.id, a);
	});

	for (const [arrowId, apex] of Object.entries(dec.attached)) {
		const angle = edgeAngle.get(arrowId) ?? 0;
		out.set(apex, {
			x: cx + radius * 1.45 * Math.cos(angle),
			y: cy + radius * 1.45 * Math.sin(angle),
		});
		const branch = dec.branches[arrowId];
		if (!branch) continue;
		// walk outward from the apex, spreading siblings by small angles
		const allowed = new Set(branch);
		const adj = neighbourMap(quiver, allowed);
		const depth = new Map<string, number>([[apex, 0]]);
		const order: string[] = [apex];
		for (let i = 0; i < order.length; i++) {
			for (const w of adj.get(order[i]) ?? []) {
				if (!depth.has(w)) {
					depth.set(w, (depth.get(order[i]) ?? 0) + 1);
					order.push(w);
				}
			}
		}
		const byDepth = new Map<number, string[]>();
		for (const v of order.slice(1)) {
			const d = depth.get(v) ?? 1;
			const bucket = byDepth.get(d) ?? [];
			bucket.push(v);
			byDepth.set(d, bucket);
		}
		for (const [d, bucket] of byDepth) {
			bucket.forEach((v, i) => {
				const spread = (i - (bucket.length - 1) / 2) * (TAU / 48);
				const r = radius * (1.45 + 0.32 * d);
				out.set(v, {
					x: cx + r * Math.cos(angle + spread),
					y: cy + r * Math.sin(angle + spread),
				});
			});
		}
	}
	return out;
}

function hashUnit(text: string, salt: number): number {
	let h = 2166136261 ^ salt;
	for (let i = 0; i < text.length; i++) {
		h = Math.imul(h ^ text.charCodeAt(i), 16777619);
	}
	return ((h >>> 0) % 10000) / 10000;
}

export function forceLayout(
	quiver: QuiverDoc,
	width: number,
	height: number,
): Map<string, Point> {
	const pos = new Map<string, Point>();
	for (const v of quiver.vertices) {
		pos.set(v, {
			x: width * (0.2 + 0.6 * hashUnit(v, 1)),
			y: height * (0.2 + 0.6 * hashUnit(v, 2)),
		});
	}
	const k = Math.min(width, height) * 0.18;
	for (let round = 0; round < 160; round++) {
		const force = new Map<string, Point>();
		for (const v of quiver.vertices) force.set(v, { x: 0, y: 0 });
		for (const v of quiver.vertices) {
			for (const w of quiver.vertices) {
				if (v === w) continue;
				const pv = pos.get(v)!;
				const pw = pos.get(w)!;
				const dx = pv.x - pw.x;
				const dy = pv.y - pw.y;
				const d2 = Math.max(dx * dx + dy * dy, 1);
				const rep = (k * k) / d2;
				const f = force.get(v)!;
				f.x += dx * rep * 0.02;
				f.y += dy * rep * 0.02;
			}
		}
		for (const a of quiver.arrows) {
			const pv = pos.get(a.from)!;
			const pw = pos.get(a.to)!;
			const dx = pw.x - pv.x;
			const dy = pw.y - pv.y;
			const d = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
			const pull = (d - k) / d;
			const fv = force.get(a.from)!;
			const fw = force.get(a.to)!;
			fv.x += dx * pull * 0.08;
			fv.y += dy * pull * 0.08;
			fw.x -= dx * pull * 0.08;
			fw.y -= dy * pull * 0.08;
		}
		for (const v of quiver.vertices) {
			const p = pos.get(v)!;
			const f = force.get(v)!;
			p.x = Math.min(width * 0.92, Math.max(width * 0.08, p.x + f.x));
			p.y = Math.min(height * 0.92, Math.max(height * 0.08, p.y + f.y));
		}
	}
	return pos;
}

export function layoutPositions(
	quiver: QuiverDoc,
	dec: DecompositionDoc | null,
	width: number,
	height: number,
): Map<string, Point> {
	const positions = dec
		? circleLayout(quiver, dec, width, height)
		: forceLayout(quiver, width, height);
	for (const v of quiver.vertices) {
		if (!positions.has(v)) {
			positions.set(v, {
				x: width * (0.1 + 0.8 * hashUnit(v, 3)),
				y: height * 0.08,
			});
		}
	}
	return positions;
}

export function hitVertex(
	positions: Map<string, Point>,
	x: number,
	y: number,
	radius = 16,
): string | null {
	let best: string | null = null;
	let bestDist = radius * radius;
	for (const [v, p] of positions) {
		const d = (p.x - x) * (p.x - x) + (p.y - y) * (p.y - y);
		if (d <= bestDist) {
			best = v;
			bestDist = d;
		}
	}
	return best;
}
