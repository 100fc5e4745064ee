// Geometry of vertex placement: cycle on a circle, apexes outside it,
// every vertex placed inside the canvas, and hit testing.

import { describe, expect, it } from "vitest";
import { forceLayout, hitVertex, layoutPositions } from "../src/layout.js";
import { fixtureAnalysis, fixtureQuiver } from "./helpers.js";

const W = 760;
const H = 720;

describe("circle layout for a recognized quiver", () => {
	const quiver = fixtureQuiver("nf_2334");
	const dec = fixtureAnalysis("nf_2334").decomposition!;
	const positions = layoutPositions(quiver, dec, W, H);

	it("places every vertex inside the canvas", () => {
		expect(positions.size).toBe(quiver.vertices.length);
		for (const v of quiver.vertices) {
			const p = positions.get(v)!;
			expect(p.x).toBeGreaterThan(0);
			expect(p.x).toBeLessThan(W);
			expect(p.y).toBeGreaterThan(0);
			expect(p.y).toBeLessThan(H);
		}
	});

	it("cycle vertices sit on a common circle", () => {
		const radii = dec.cycle.map((v) => {
			const p = positions.get(v)!;
			return Math.hypot(p.x - W / 2, p.y - H / 2);
		});
		for (const r of radii) {
			expect(Math.abs(r - radii[0])).toBeLessThan(1e-6);
		}
	});

	it("apexes sit outside the cycle circle", () => {
		const cycleRadius = Math.hypot(
			positions.get(dec.cycle[0])!.x - W / 2,
			positions.get(dec.cycle[0])!.y - H / 2,
		);
		for (const apex of Object.values(dec.attached)) {
			const p = positions.get(apex)!;
			expect(Math.hypot(p.x - W / 2, p.y - H / 2)).toBeGreaterThan(cycleRadius * 1.2);
		}
	});

	it("hit testing picks the nearest vertex within range", () => {
		const v = dec.cycle[3];
		const p = positions.get(v)!;
		expect(hitVertex(positions, p.x + 4, p.y - 3)).toBe(v);
		expect(hitVertex(positions, W / 2, H / 2)).toBeNull();
	});
});

describe("force layout fallback", () => {
	it("is deterministic and places everything", () => {
		const quiver = fixtureQuiver("nf_1111");
		const a = forceLayout(quiver, W, H);
		const b = forceLayout(quiver, W, H);
		expect(a.size).toBe(quiver.vertices.length);
		for (const v of quiver.vertices) {
			expect(a.get(v)).toEqual(b.get(v));
		}
	});

	it("separates the vertices", () => {
		const quiver = fixtureQuiver("cycle_2_3");
		const positions = forceLayout(quiver, W, H);
		const points = [...positions.values()];
		for (let i = 0; i < points.length; i++) {
			for (let j = i + 1; j < points.length; j++) {
				const d = Math.hypot(points[i].x - points[j].x, points[i].y - points[j].y);
				expect(d).toBeGreaterThan(20);
			}
		}
	});
});
