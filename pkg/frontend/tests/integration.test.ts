// End-to-end against a live workbench server: fixture parity over the wire,
// byte-identical click-mutate-undo, and the reduction stepper running to
// completion with a constant parameter panel.

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { ApiClient, ApiError } from "../src/api.js";
import { paramsPanelDoc, phiPanelDoc } from "../src/panels.js";
import { ExplorerSession } from "../src/session.js";
import { canonicalBytes } from "../src/types.js";
import {
	fixtureBytes,
	fixtureNames,
	fixtureQuiver,
	hasFixture,
	startServer,
	type ServerHandle,
} from "./helpers.js";

let server: ServerHandle;
let api: ApiClient;

beforeAll(async () => {
	server = await startServer();
	api = new ApiClient(server.base);
}, 30000);

afterAll(() => {
	server?.stop();
});

describe("live panel parity for the golden fixtures", () => {
	it("all twenty fixtures agree with the CLI documents", async () => {
		for (const name of fixtureNames()) {
			const report = await api.analyze(fixtureQuiver(name));
			expect(canonicalBytes(report)).toBe(fixtureBytes(`${name}.analysis.json`));
			if (!hasFixture(`${name}.params.json`)) continue;
			expect(canonicalBytes(paramsPanelDoc(report))).toBe(
				fixtureBytes(`${name}.params.json`),
			);
			expect(canonicalBytes(phiPanelDoc(report))).toBe(
				fixtureBytes(`${name}.phi.json`),
			);
		}
	}, 60000);
});

describe("interactive mutation", () => {
	it("click, mutate, undo round-trips byte-identically", async () => {
		const session = new ExplorerSession(api);
		for (const name of ["nf_2334", "cycle_5_7", "mut_2334_3"]) {
			await session.load(fixtureQuiver(name));
			const before = canonicalBytes(session.current);
			for (const vertex of session.current!.vertices.slice(0, 3)) {
				await session.mutateAt(vertex);
				await session.undo();
				expect(canonicalBytes(session.current)).toBe(before);
			}
		}
	}, 60000);

	it("history replay through the API reproduces the document", async () => {
		const session = new ExplorerSession(api);
		await session.load(fixtureQuiver("nf_1210"));
		const picks = ["c00", "c01", "c03", "c02"];
		for (const vertex of picks) {
			await session.mutateAt(vertex);
		}
		const replayed = await session.replayFromInitial();
		expect(canonicalBytes(replayed)).toBe(canonicalBytes(session.current));
	}, 30000);

	it("loading an out-of-class quiver reports the reason", async () => {
		const session = new ExplorerSession(api);
		await session.load({
			vertices: ["1", "2", "3"],
			arrows: [
				{ id: "a", from: "1", to: "2" },
				{ id: "b", from: "2", to: "3" },
				{ id: "c", from: "3", to: "1" },
			],
		});
		expect(session.report?.recognized).toBe(false);
		expect(session.report?.reason).toBe("NoNonOrientedCycle");
		await expect(session.startReduction()).rejects.toThrow();
	}, 30000);

	it("mutating at a bogus vertex surfaces an ApiError", async () => {
		const session = new ExplorerSession(api);
		await session.load(fixtureQuiver("nf_1010"));
		await expect(session.mutateAt("nope")).rejects.toThrow(ApiError);
	}, 30000);
});

describe("guided reduction stepper", () => {
	it("runs to completion with the parameter panel constant", async () => {
		const session = new ExplorerSession(api);
		for (const name of ["mut_2334_3", "mut_1210_2", "mut_0210_2"]) {
			await session.load(fixtureQuiver(name));
			const panel = canonicalBytes(paramsPanelDoc(session.report!));
			await session.startReduction();
			const total = session.trace!.steps.length;
			while (session.traceActive()) {
				await session.stepReduction();
				expect(canonicalBytes(paramsPanelDoc(session.report!))).toBe(panel);
			}
			expect(session.traceDone()).toBe(true);
			expect(session.trace!.position).toBe(total);
			// the stepper replayed the exact recorded trace, so the document
			// now equals the server's normal form byte for byte
			expect(canonicalBytes(session.current)).toBe(
				canonicalBytes(session.trace!.normalForm),
			);
		}
	}, 120000);

	it("a detour invalidates the trace and the badge flips", async () => {
		const session = new ExplorerSession(api);
		await session.load(fixtureQuiver("mut_1111_2"));
		await session.startReduction();
		if (session.trace!.steps.length === 0) return;
		await session.stepReduction();
		await session.mutateAt(session.current!.vertices[0]);
		expect(session.trace!.invalidated).toBe(true);
		expect(session.traceActive()).toBe(false);
	}, 30000);
});
