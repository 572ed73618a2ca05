/** Keyboard bindings: keys 1-5 map to the five classes in code order. */
import { CLASSES, ClassCode } from "./types.js";

const BY_KEY = new Map(CLASSES.map((c) => [c.key, c.code]));

/** Class code for a pressed key, or null when the key is not a binding. */
export function classForKey(key: string): ClassCode | null {
  const code = BY_KEY.get(key);
  return code === undefined ? null : code;
}
