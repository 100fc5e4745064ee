import { readFileSync, readdirSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { spawn, type ChildProcess } from "node:child_process";
import type { AnalysisDoc, QuiverDoc } from "../src/types.js";

const fixturesDir = fileURLToPath(new URL("../fixtures/", import.meta.url));

export function fixtureNames(): string[] {
	const index = JSON.parse(readFileSync(fixturesDir + "index.json", "utf-8"));
	return index.fixtures as string[];
}

export function fixtureBytes(file: string): string {
	return readFileSync(fixturesDir + file, "utf-8").trim();
}

export function fixtureQuiver(name: string): QuiverDoc {
	return JSON.parse(fixtureBytes(`${name}.json`)) as QuiverDoc;
}

export function fixtureAnalysis(name: string): AnalysisDoc {
	return JSON.parse(fixtureBytes(`${name}.analysis.json`)) as AnalysisDoc;
}

export function hasFixture(file: string): boolean {
	return readdirSync(fixturesDir).includes(file);
}

export interface ServerHandle {
	base: string;
	stop(): void;
}

export async function startServer(): Promise<ServerHandle> {
	const port = 18000 + Math.floor(Math.random() * 20000);
	const child: ChildProcess = spawn(
		"python3",
		["-m", "tildea.cli", "serve", "--port", String(port)],
		{ stdio: "ignore" },
	);
	const base = `http://127.0.0.1:${port}`;
	for (let attempt = 0; attempt < 100; attempt++) {
		try {
			const resp = await fetch(`${base}/api/normal-form?r1=1&r2=0&s1=1&s2=0`);
			if (resp.ok) {
				await resp.arrayBuffer();
				return { base, stop: () => child.kill() };
			}
		} catch {
			// server not up yet
		}
		await new Promise((resolve) => setTimeout(resolve, 100));
	}
	child.kill();
	throw new Error("workbench server did not come up");
}
